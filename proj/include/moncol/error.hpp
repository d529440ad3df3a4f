#pragma once

#include <stdexcept>
#include <string>

namespace moncol {

enum class ErrorKind {
  MixedVariants,
  NonMonoInChain,
  MonoViolation,
  NotSeparated,
  NonMonicUnit,
  NonTerminatingRules,
  DepthExceeded,
  FillInFailure,
  NotWeaklyTerminal,
  CeilingExceeded,
  BudgetExhausted,
  UnsupportedVariant,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Atom ceiling shared by every construction that may blow up.
inline constexpr std::size_t kAtomCeiling = 1'000'000;

}  // namespace moncol
