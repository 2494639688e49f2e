#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/floquet_engine.hpp"
#include "pxp/linalg.hpp"
#include "pxp/states.hpp"

namespace pxp {

inline constexpr double kGoeMeanRatio = 0.5359;      // 4 - 2 sqrt(3), Wigner-like surmise
inline constexpr double kPoissonMeanRatio = 0.3863;  // 2 ln 2 - 1

double goe_ratio_density(double r);
double poisson_ratio_density(double r);

struct LevelStatistics {
  std::vector<double> r_values;
  double mean_r = 0.0;
  std::vector<double> bin_edges;  // bins + 1 edges on [0, 1]
  std::vector<double> density;    // integrates to 1
  std::size_t levels = 0;         // after zero-mode removal
  bool low_confidence = false;    // fewer than 50 usable levels
};

/**
 * Ratios r_n = min(d_n, d_{n-1}) / max(d_n, d_{n-1}) of consecutive gaps.
 *
 * Levels with |E| <= zero_tol are dropped first. When circle_period is set
 * the levels live on a circle of that circumference and the wraparound gap
 * is included, so the result does not depend on where the branch is cut.
 */
LevelStatistics level_statistics(const VecR& levels, std::optional<double> circle_period, double zero_tol,
                                 int bins = 20);

struct ZeroModeCensus {
  std::size_t count = 0;
  std::uint64_t bound = 0;  // F_{L/2}
  bool bound_satisfied = false;
  double tolerance = 0.0;
  /// Largest distance from -E to the nearest level, over nonzero E, on the quasienergy circle.
  double max_pair_mismatch = 0.0;
  std::size_t unpaired = 0;
};

/// Exact zero quasienergies (|E| < 1e-8 omega) and the chiral +-E pairing check at 1e-9 omega.
ZeroModeCensus zero_mode_census(const VecR& quasienergies, double omega, const ChainGeometry& g);

enum class Phase { nonergodic, precursor, ergodic };

const char* to_string(Phase p);

struct ClassificationThresholds {
  double late_fraction = 0.4;
  double std_max = 0.02;
  double mean_tolerance = 0.05;
  /// Peak power must exceed this multiple of the mean non-DC power.
  double prominence_factor = 10.0;
  double overlap = 1e-2;
};

struct PhasePointRequest {
  double omega = 0.0;
  double lambda = 0.0;
  double w = 1.4142135623730951;
  int L = 14;
  InitialState state = {InitialState::Kind::z2plus, 0};
  int n_max = 1024;
  int site = 2;
  int separation = 2;
  ClassificationThresholds thresholds;
  UnitaryMethod method = UnitaryMethod::hermitian_pencil;
};

struct PhasePoint {
  double omega = 0.0;
  double lambda = 0.0;
  int L = 0;
  Phase classification = Phase::precursor;
  double std_late = 0.0;
  double mean_late = 0.0;
  double inf_T_value = 0.0;
  std::size_t scar_count = 0;
  double mean_r = 0.0;
  double prominence = 0.0;
  bool branch_warning = false;
  std::string space_tag;
  std::string error;  // non-empty when the point failed
};

/// Applies the threshold rules to measured metrics.
Phase classify_metrics(double std_late, double mean_late, double inf_T_value, std::size_t scar_count,
                       double prominence, const ClassificationThresholds& t);

/**
 * Evolves the state for n_max cycles and classifies the late-time behaviour.
 *
 * States confined to the (k = 0, p = +1) sector are evolved there; others in
 * the full basis. Mean r is always taken from the (k = 0, p = +1) spectrum.
 */
PhasePoint classify_phase_point(const PhasePointRequest& request);

struct SweepRequest {
  std::vector<double> omegas;
  std::vector<double> lambdas;
  PhasePointRequest base;  // omega and lambda are overwritten per point
  int jobs = 1;
};

struct SweepResult {
  std::vector<PhasePoint> points;  // lambda-major, omega-minor grid order
  std::vector<std::vector<double>> critical;  // predicted omega_c per lambda, empty for lambda <= 0
};

SweepResult phase_diagram_sweep(const SweepRequest& request, int q_max = 4);

}  // namespace pxp
