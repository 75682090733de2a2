#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcircle_cli/table.hpp"

namespace qcircle::cli {

enum class Format { Csv, Json };

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotConvergent = 3;
inline constexpr int kExitWindow = 4;

struct Range {
  double lo;
  double hi;
  double step;
};

struct RunConfig {
  std::string subcommand;
  double q = 1.0;
  double s = 1.0;
  double l = 0.0;
  double alpha = 0.0;
  double h = 0.0;
  double beta = 0.0;
  double phi = 0.0;
  double tol = 1e-14;
  int jmax = 64;
  bool jmax_given = false;  // dist-j uses a fixed window only when asked
  int grid = 512;
  double delta = 1e-4;      // limit-check offset from q = 1
  std::optional<Range> l_range;
  std::vector<double> q_values;
  std::vector<double> s_values;
  Format format = Format::Csv;
  std::string output;  // empty: standard output
  bool degrees = false;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"state",  "norm",    "overlap",    "expect-j",   "expect-u",    "rel-u",
                                               "dist-j", "dist-phi", "scan-error", "gate-map", "limit-check", "algebra-check"};
  return names;
}

struct ParseResult {
  std::optional<RunConfig> config;  // empty when parsing finished the run (help, error)
  int exit_code = kExitOk;
};

/// argv without the program name.
ParseResult parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Validates, computes and emits. Errors go to err as "qcircle: <kind>: <message>".
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// The computed table for a config, without emitting; throws qcircle::Error.
Table compute(const RunConfig& config);

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcircle::cli
