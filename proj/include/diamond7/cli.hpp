#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond7/report.hpp"

namespace diamond7::cli {

inline constexpr const char* kToolName = "diamond7";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kMathFailure = 1, kUsage = 2, kPrecisionRefusal = 3 };

/// Output document of every subcommand.
struct Certificate {
  std::string tool = kToolName;
  std::string version = kVersion;
  std::string seed_checksum;
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  /// "exact" or "7^R".
  std::string modulus = "exact";
  /// Sorted by subject.
  std::vector<Report> reports;
  double wall_time_seconds = 0.0;

  bool pass() const;
  std::size_t total_checks() const;
  std::size_t failed_checks() const;

  nlohmann::ordered_json to_json() const;
  static Certificate from_json(const nlohmann::ordered_json& j);
  std::string to_text() const;
};

/// Runs one command line (args excludes the program name). Text output goes
/// to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diamond7::cli
