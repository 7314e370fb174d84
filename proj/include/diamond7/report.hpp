#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace diamond7 {

/// One verified statement: what was required, what was observed.
struct Check {
  std::string name;
  std::string required;
  std::string observed;
  bool pass = true;
};

/// Outcome of a verification or audit. Failures of mathematical checks are
/// recorded here rather than thrown.
struct Report {
  std::string subject;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  /// Free-form structured details (slack summaries, notes, certified ranges).
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool pass() const;
  std::size_t failures() const;
  void add(std::string name, std::string required, std::string observed, bool ok);
  /// Append all checks of another report, prefixing their names.
  void absorb(const Report& other, const std::string& prefix = "");

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  std::string to_text() const;
};

}  // namespace diamond7
