#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/diagnostics.hpp"
#include "pxp/linalg.hpp"

namespace pxp::cli {

/// Raised for configuration problems detected before any heavy allocation.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& experiments() {
  static const std::vector<std::string> names{"basis",     "spectrum", "dynamics", "entanglement", "norms",
                                              "levelstats", "zeromodes", "sweep",    "magnus-check", "scargap"};
  return names;
}

struct RunConfig {
  std::string experiment;
  int L = 14;
  Boundary boundary = Boundary::periodic;
  double w = 1.4142135623730951;
  std::vector<double> lambdas{15.0};
  std::vector<double> omegas{15.0};
  std::string state = "Z2";
  int n_max = 1024;
  int jobs = 1;
  std::string out = "pxp_out";
  int site = 2;
  int separation = 2;
  UnitaryMethod method = UnitaryMethod::hermitian_pencil;
  /// "auto", "full", or a sector such as "k=0,p=+1" or "k=3".
  std::string space = "auto";
  int q_max = 4;
  bool seedless = false;
  bool dump_operators = false;
  ClassificationThresholds thresholds;
  std::size_t max_dense_dim = 6000;

  /// Throws config_error. Uses closed-form dimensions only.
  void validate() const;
  /// Resolved settings in a fixed order.
  nlohmann::ordered_json to_json() const;
};

/// "15", "7, 8.25, 9" or an inclusive range "start:stop:step".
std::vector<double> parse_grid(const std::string& text);

/// Parses "full" or "k=<int>[,p=+1|-1]".
SymmetrySector parse_sector(const std::string& text);

/// Command line with an optional --config key=value file; explicit flags win.
/// Returns false when only help was requested (text written to help_out).
bool parse_command_line(const std::vector<std::string>& args, RunConfig& config, std::string& help_out);

}  // namespace pxp::cli
