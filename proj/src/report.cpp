#include "moncol/report.hpp"

namespace moncol {

void LawReport::fail(std::string law, std::string where, std::string detail) {
  ++checked;
  ++violation_count;
  if (violations.size() < kKept) violations.push_back({std::move(law), std::move(where), std::move(detail)});
}

bool LawReport::expect(bool ok, const std::string& law, const std::string& where, const std::string& detail) {
  if (ok) {
    pass();
  } else {
    fail(law, where, detail);
  }
  return ok;
}

void LawReport::merge(const LawReport& other) {
  checked += other.checked;
  violation_count += other.violation_count;
  for (const auto& v : other.violations) {
    if (violations.size() < kKept) violations.push_back(v);
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string LawReport::str() const {
  std::string out = subject + ": " + std::to_string(checked) + " checks, " + std::to_string(violation_count) +
                    " violations\n";
  for (const auto& v : violations) out += "  [" + v.law + "] at " + v.where + ": " + v.detail + "\n";
  for (const auto& n : notes) out += "  note: " + n + "\n";
  return out;
}

}  // namespace moncol
