#include "diamond7/report.hpp"

#include <algorithm>
#include <sstream>

namespace diamond7 {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

void Report::add(std::string name, std::string required, std::string observed, bool ok) {
  checks.push_back({std::move(name), std::move(required), std::move(observed), ok});
}

void Report::absorb(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.required, c.observed, c.pass});
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["subject"] = subject;
  for (auto it = params.begin(); it != params.end(); ++it) j[it.key()] = it.value();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"required", c.required}, {"observed", c.observed}, {"pass", c.pass}});
  }
  if (!details.empty()) j["details"] = details;
  j["pass"] = pass();
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.subject = j.value("subject", "");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "subject" || it.key() == "checks" || it.key() == "details" || it.key() == "pass") {
      continue;
    }
    r.params[it.key()] = it.value();
  }
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("required").get<std::string>(),
                        c.at("observed").get<std::string>(), c.at("pass").get<bool>()});
  }
  if (j.contains("details")) r.details = j.at("details");
  return r;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject;
  if (!params.empty()) os << ' ' << params.dump();
  os << '\n';
  for (const auto& c : checks) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": required " << c.required
       << ", observed " << c.observed << '\n';
  }
  if (!details.empty()) os << "  details: " << details.dump() << '\n';
  os << "  => " << (pass() ? "PASS" : "FAIL") << " (" << checks.size() - failures() << '/'
     << checks.size() << " checks)\n";
  return os.str();
}

}  // namespace diamond7
