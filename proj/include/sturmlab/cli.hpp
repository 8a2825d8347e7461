#pragma once

// Command-line front end: every testbed as a verb, output as CSV or JSON.

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sturm::cli {

enum class Format { csv, json };

enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_usage = 2, exit_internal = 3 };

/// Bad verb, unknown or malformed parameter, unreadable config.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to rerun a command.  The sub-command of a verb (e.g.
/// "mechanical" for words) is the parameter "command".
struct RunManifest {
  std::string verb;
  std::map<std::string, std::string> parameters;
  std::optional<std::uint64_t> seed;
  std::string output_path;  // empty or "-" for stdout
  Format format = Format::csv;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

/// Column names plus rows of scalar JSON values, and the verdict of the run.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;
  bool passed = true;
};

/// Fills in defaults and rejects unknown verbs, commands and parameters.
RunManifest normalize(const RunManifest& m);

/// Runs the manifest without writing anything.  Throws UsageError.
Table execute(const RunManifest& m);

/// CSV (header row first) or {"meta": {...}, "rows": [...]}.
std::string render(const Table& t, const RunManifest& m);

/// Runs, writes the artifact, reports errors on `err`; returns an ExitCode.
int dispatch(const RunManifest& m, std::ostream& out, std::ostream& err);

/// Parses argv into a manifest and dispatches it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace sturm::cli
