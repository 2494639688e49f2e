#include "pxp/sector_resolved.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pxp/observables.hpp"

namespace pxp {
namespace {

SpectralWeights sorted(std::vector<double> e, std::vector<double> w, bool warn) {
  std::vector<std::size_t> order(e.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });
  SpectralWeights out;
  out.energies.resize(static_cast<Eigen::Index>(e.size()));
  out.weights.resize(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.energies(static_cast<Eigen::Index>(i)) = e[order[i]];
    out.weights(static_cast<Eigen::Index>(i)) = w[order[i]];
  }
  out.branch_warning = warn;
  return out;
}

}  // namespace

std::vector<SymmetrySector> all_sectors(const ChainGeometry& g) {
  g.validate();
  if (!g.periodic()) throw std::invalid_argument("symmetry sectors require a periodic chain");
  std::vector<SymmetrySector> out{{0, 1}, {0, -1}};
  for (int k = 1; k < g.L; ++k) {
    if (2 * k == g.L) {
      out.push_back({k, 1});
      out.push_back({k, -1});
    } else {
      out.push_back({k, 0});
    }
  }
  return out;
}

std::vector<SectorComponent> split_over_sectors(const ConstrainedBasis& basis, const VecC& psi_full, double cutoff) {
  std::vector<SectorComponent> parts;
  for (const SymmetrySector& s : all_sectors(basis.geometry())) {
    SectorBasis sb(basis, s);
    if (sb.dim() == 0) continue;
    VecC amp = sb.project(psi_full);
    if (amp.squaredNorm() <= cutoff) continue;
    parts.push_back({Space::sector(std::move(sb)), std::move(amp)});
  }
  return parts;
}

SpectralWeights floquet_weights(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                UnitaryMethod method) {
  std::vector<double> e, w;
  bool warn = false;
  for (const auto& part : parts) {
    const FloquetSpectrum spec = diagonalize_floquet(build_floquet_operator(part.space, protocol), method);
    const VecR ov = overlaps(spec.vectors, part.amplitude);
    const double period = spec.period();
    for (Eigen::Index i = 0; i < ov.size(); ++i) {
      e.push_back(spec.quasienergies(i));
      w.push_back(ov(i));
      if (std::abs(spec.quasienergies(i) * period) > std::numbers::pi - 1e-6) warn = true;
    }
  }
  return sorted(std::move(e), std::move(w), warn);
}

SpectralWeights pxp_weights(const std::vector<SectorComponent>& parts, double w) {
  std::vector<double> e, wt;
  for (const auto& part : parts) {
    const HermitianEigen he = eigh_auto(build_h_spin(part.space, w, 0.0));
    const VecR ov = overlaps(he.vectors, part.amplitude);
    for (Eigen::Index i = 0; i < ov.size(); ++i) {
      e.push_back(he.values(i));
      wt.push_back(ov(i));
    }
  }
  return sorted(std::move(e), std::move(wt), false);
}

SectorDynamics sector_resolved_dynamics(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                        const LocalAction& diagonal_observable, int n_max) {
  if (parts.empty()) throw std::invalid_argument("no sector components to evolve");
  if (n_max < 0) throw std::invalid_argument("number of drive cycles must be non-negative");
  const ConstrainedBasis& basis = parts.front().space.basis();
  const auto n = static_cast<Eigen::Index>(basis.size());

  VecR diag(n);
  std::vector<LocalTerm> terms;
  for (Eigen::Index i = 0; i < n; ++i) {
    terms.clear();
    const state_t s = basis.state(static_cast<std::size_t>(i));
    diagonal_observable(s, terms);
    double v = 0.0;
    for (const auto& t : terms) {
      if (t.state != s) throw std::invalid_argument("sector-resolved series needs a diagonal observable");
      v += t.amplitude.real();
    }
    diag(i) = v;
  }

  std::vector<MatC> us;
  std::vector<VecC> amps;
  for (const auto& part : parts) {
    us.push_back(build_floquet_operator(part.space, protocol).U);
    amps.push_back(part.amplitude);
  }

  SectorDynamics out;
  out.observable.reserve(static_cast<std::size_t>(n_max) + 1);
  out.fidelity.reserve(static_cast<std::size_t>(n_max) + 1);
  VecC full(n);
  for (int cycle = 0; cycle <= n_max; ++cycle) {
    full.setZero();
    cplx ret = 0.0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      full += parts[p].space.to_full(amps[p]);
      ret += parts[p].amplitude.dot(amps[p]);
    }
    out.observable.push_back((full.cwiseAbs2().array() * diag.array()).sum());
    out.fidelity.push_back(std::norm(ret));
    if (cycle == n_max) break;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      amps[p] = (us[p] * amps[p]).eval();
      const double drift = std::abs(amps[p].norm() - parts[p].amplitude.norm());
      if (drift > 1e-6)
        throw numerical_error("sector " + parts[p].space.tag() + " norm drifted by " + std::to_string(drift));
    }
  }
  return out;
}

std::vector<double> sector_resolved_series(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                           const LocalAction& diagonal_observable, int n_max) {
  return sector_resolved_dynamics(parts, protocol, diagonal_observable, n_max).observable;
}

}  // namespace pxp
