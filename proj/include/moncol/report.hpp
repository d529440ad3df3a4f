#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace moncol {

struct Violation {
  std::string law;
  std::string where;
  std::string detail;
};

/// Outcome of an exhaustive or sampled check. Only the first few violations
/// are kept; the count is exact.
struct LawReport {
  std::string subject;
  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  static constexpr std::size_t kKept = 32;

  bool clean() const { return violation_count == 0; }
  void pass() { ++checked; }
  void fail(std::string law, std::string where, std::string detail);
  /// Records one check; returns `ok`.
  bool expect(bool ok, const std::string& law, const std::string& where, const std::string& detail = {});
  void note(std::string text) { notes.push_back(std::move(text)); }
  void merge(const LawReport& other);
  std::string str() const;
};

}  // namespace moncol
