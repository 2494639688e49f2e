#include "pxp/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pxp/effective_hamiltonians.hpp"
#include "pxp/observables.hpp"
#include "pxp/spin_operators.hpp"

namespace pxp {
namespace {

double circular_distance(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

double wrap_to_branch(double e, double period) {
  double r = std::remainder(e, period);
  if (r <= -period / 2.0) r += period;
  return r;
}

}  // namespace

double goe_ratio_density(double r) {
  // Surmise for min/max ratios on [0, 1]; twice the density of the unfolded ratio.
  const double s = 1.0 + r + r * r;
  return (27.0 / 4.0) * (r + r * r) / std::pow(s, 2.5);
}

double poisson_ratio_density(double r) { return 2.0 / ((1.0 + r) * (1.0 + r)); }

LevelStatistics level_statistics(const VecR& levels, std::optional<double> circle_period, double zero_tol, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(levels.size()));
  for (Eigen::Index i = 0; i < levels.size(); ++i)
    if (std::abs(levels(i)) > zero_tol) e.push_back(levels(i));
  std::sort(e.begin(), e.end());

  LevelStatistics out;
  out.levels = e.size();
  out.low_confidence = e.size() < 50;

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) gaps.push_back(e[i + 1] - e[i]);
  if (circle_period && e.size() >= 2) gaps.push_back(e.front() + *circle_period - e.back());

  const std::size_t ng = gaps.size();
  const std::size_t pairs = circle_period ? (ng >= 3 ? ng : 0) : (ng >= 2 ? ng - 1 : 0);
  for (std::size_t k = 0; k < pairs; ++k) {
    const double a = gaps[k];
    const double b = gaps[(k + 1) % ng];
    const double hi = std::max(a, b);
    if (hi <= 0.0) continue;
    out.r_values.push_back(std::min(a, b) / hi);
  }

  out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) out.bin_edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / bins;
  out.density.assign(static_cast<std::size_t>(bins), 0.0);
  if (out.r_values.empty()) return out;

  for (double r : out.r_values) {
    auto b = static_cast<std::size_t>(std::floor(r * bins));
    if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
    out.density[b] += 1.0;
  }
  const double norm = static_cast<double>(out.r_values.size()) / bins;
  for (double& d : out.density) d /= norm;
  out.mean_r = std::accumulate(out.r_values.begin(), out.r_values.end(), 0.0) / static_cast<double>(out.r_values.size());
  return out;
}

ZeroModeCensus zero_mode_census(const VecR& quasienergies, double omega, const ChainGeometry& g) {
  g.validate_even();
  ZeroModeCensus out;
  out.tolerance = 1e-8 * omega;
  out.bound = fibonacci(g.L / 2);
  std::vector<double> e(quasienergies.data(), quasienergies.data() + quasienergies.size());
  std::sort(e.begin(), e.end());
  for (double x : e)
    if (std::abs(x) < out.tolerance) ++out.count;
  out.bound_satisfied = out.count >= out.bound;

  const double pair_tol = 1e-9 * omega;
  for (double x : e) {
    if (std::abs(x) < out.tolerance) continue;
    const double target = wrap_to_branch(-x, omega);
    auto it = std::lower_bound(e.begin(), e.end(), target);
    double best = std::numeric_limits<double>::infinity();
    for (auto c : {it, it == e.begin() ? e.end() : it - 1, e.begin(), e.end() - 1})
      if (c != e.end()) best = std::min(best, circular_distance(*c, target, omega));
    out.max_pair_mismatch = std::max(out.max_pair_mismatch, best);
    if (best > pair_tol) ++out.unpaired;
  }
  return out;
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::nonergodic:
      return "nonergodic";
    case Phase::precursor:
      return "precursor";
    case Phase::ergodic:
      return "ergodic";
  }
  return "unknown";
}

Phase classify_metrics(double std_late, double mean_late, double inf_T_value, std::size_t scar_count,
                       double prominence, const ClassificationThresholds& t) {
  if (std_late < t.std_max && std::abs(mean_late - inf_T_value) < t.mean_tolerance && scar_count == 0)
    return Phase::ergodic;
  if (scar_count > 0 && prominence > t.prominence_factor) return Phase::nonergodic;
  return Phase::precursor;
}

PhasePoint classify_phase_point(const PhasePointRequest& req) {
  if (req.n_max < 500) throw std::invalid_argument("classification needs at least 500 drive cycles");
  const ChainGeometry geom{req.L, Boundary::periodic};
  geom.validate_even();
  const DriveProtocol protocol{req.w, req.lambda, req.omega};
  protocol.validate();

  const ConstrainedBasis basis(geom);
  SectorBasis symmetric(basis, {0, 1});
  const VecC full = full_state_vector(basis, req.state);
  const bool in_sector = lies_in_sector(symmetric, full);
  const Space space = in_sector ? Space::sector(symmetric) : Space::full(basis);

  const EvolutionOperator u = build_floquet_operator(space, protocol);
  const FloquetSpectrum spec = diagonalize_floquet(u, req.method);
  const MatC obs = build_correlator(space, req.site, req.separation);
  const VecC psi0 = space.from_full(full);

  PhasePoint p;
  p.omega = req.omega;
  p.lambda = req.lambda;
  p.L = req.L;
  p.space_tag = space.tag();

  const std::vector<double> series = correlator_series(psi0, u.U, obs, req.n_max).values;
  const auto total = series.size();
  const auto late = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(req.thresholds.late_fraction * static_cast<double>(total))));
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = total - late; i < total; ++i) {
    sum += series[i];
    sq += series[i] * series[i];
  }
  p.mean_late = sum / static_cast<double>(late);
  p.std_late = std::sqrt(std::max(sq / static_cast<double>(late) - p.mean_late * p.mean_late, 0.0));
  p.inf_T_value = obs.trace().real() / static_cast<double>(space.dim());

  const VecR ov = overlaps(spec.vectors, psi0);
  const double zero_tol = 1e-8 * req.omega;
  p.scar_count = identify_scars(spec.quasienergies, ov, req.thresholds.overlap, zero_tol).members.size();

  const FourierSpectrum fs = fourier_peak(series, protocol.period());
  p.prominence = fs.prominence;

  const VecR sector_levels = in_sector ? spec.quasienergies : floquet_quasienergies(build_floquet_operator(Space::sector(symmetric), protocol));
  p.mean_r = level_statistics(sector_levels, req.omega, zero_tol).mean_r;
  p.branch_warning = floquet_hamiltonian_exact(spec).branch_warning;

  p.classification =
      classify_metrics(p.std_late, p.mean_late, p.inf_T_value, p.scar_count, p.prominence, req.thresholds);
  return p;
}

SweepResult phase_diagram_sweep(const SweepRequest& request, int q_max) {
  SweepResult out;
  std::vector<PhasePointRequest> tasks;
  for (double lam : request.lambdas) {
    out.critical.push_back(lam > 0.0 ? critical_frequencies(lam, q_max) : std::vector<double>{});
    for (double om : request.omegas) {
      PhasePointRequest r = request.base;
      r.lambda = lam;
      r.omega = om;
      tasks.push_back(r);
    }
  }
  out.points.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out.points[i] = classify_phase_point(tasks[i]);
      } catch (const std::exception& e) {
        PhasePoint& p = out.points[i];
        p.omega = tasks[i].omega;
        p.lambda = tasks[i].lambda;
        p.L = tasks[i].L;
        p.error = e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(request.jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace pxp
