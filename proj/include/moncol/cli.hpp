#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace moncol {

enum class OutputFormat { Text, Structured };

struct RunConfig {
  std::string command;
  std::vector<std::string> specs;
  std::size_t budget = 8;
  std::size_t depth = 2;
  std::vector<std::size_t> sizes{0, 1, 2};
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 0x5eed;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitLawViolation = 1,
  kExitParseError = 2,
  kExitNotSeparated = 3,
  kExitBudget = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json payload;
};

/// Runs one command; errors are reported in the payload, never thrown.
CommandResult run_command(const RunConfig& config);
/// The exit code implied by a payload's "status" field.
int exit_code_of(const nlohmann::ordered_json& payload);
std::string render(const CommandResult& result, OutputFormat format);

const std::vector<std::string>& command_names();

}  // namespace moncol
