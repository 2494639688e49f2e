#include "pxp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace pxp {
namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double expectation(const VecC& psi, const MatC& op) {
  const cplx v = psi.dot(op * psi);
  if (std::abs(v.imag()) > 1e-8) throw numerical_error("observable expectation has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace

DynamicsResult stroboscopic_dynamics(const VecC& psi0, const MatC& u, const MatC& observable, int n_max) {
  if (observable.rows() != u.rows() || observable.cols() != u.cols())
    throw std::invalid_argument("observable and evolution operator live in different spaces");
  DynamicsResult out;
  out.correlator.observable = "correlator";
  out.fidelity.observable = "fidelity";
  out.correlator.values.reserve(static_cast<std::size_t>(n_max) + 1);
  out.fidelity.values.reserve(static_cast<std::size_t>(n_max) + 1);
  evolve_stroboscopic(psi0, u, n_max, [&](int, const VecC& psi) {
    out.correlator.values.push_back(expectation(psi, observable));
    out.fidelity.values.push_back(std::norm(psi0.dot(psi)));
  });
  return out;
}

ObservableSeries correlator_series(const VecC& psi0, const MatC& u, const MatC& observable, int n_max) {
  if (observable.rows() != u.rows() || observable.cols() != u.cols())
    throw std::invalid_argument("observable and evolution operator live in different spaces");
  ObservableSeries s{{}, "correlator", {}};
  s.values.reserve(static_cast<std::size_t>(n_max) + 1);
  evolve_stroboscopic(psi0, u, n_max, [&](int, const VecC& psi) { s.values.push_back(expectation(psi, observable)); });
  return s;
}

ObservableSeries fidelity_series(const VecC& psi0, const MatC& u, int n_max) {
  ObservableSeries s{{}, "fidelity", {}};
  s.values.reserve(static_cast<std::size_t>(n_max) + 1);
  evolve_stroboscopic(psi0, u, n_max, [&](int, const VecC& psi) { s.values.push_back(std::norm(psi0.dot(psi))); });
  return s;
}

FourierSpectrum fourier_peak(const std::vector<double>& series, double period) {
  const std::size_t n = series.size();
  if (n < 64) throw std::invalid_argument("Fourier analysis needs at least 64 samples, got " + std::to_string(n));
  if (!(period > 0.0)) throw std::invalid_argument("sampling period must be positive");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centred(n);
  std::transform(series.begin(), series.end(), centred.begin(), [mean](double x) { return x - mean; });

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> bins;
  fft.fwd(bins, centred);

  FourierSpectrum out;
  out.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * period);
  const std::size_t half = n / 2;
  out.frequencies.resize(half + 1);
  out.power.resize(half + 1);
  for (std::size_t m = 0; m <= half; ++m) {
    out.frequencies[m] = static_cast<double>(m) * out.bin_width;
    out.power[m] = std::norm(bins[m]);
  }

  const auto peak = std::max_element(out.power.begin() + 1, out.power.end());
  const double total = std::accumulate(out.power.begin() + 1, out.power.end(), 0.0);
  const double scale = static_cast<double>(n) * static_cast<double>(n);
  if (*peak <= 1e-24 * scale) return out;

  out.peak_bin = static_cast<std::size_t>(peak - out.power.begin());
  out.omega_res = out.frequencies[out.peak_bin];
  out.prominence = *peak / (total / static_cast<double>(half));
  out.at_resolution_floor = out.peak_bin == 1;
  return out;
}

VecR half_chain_spectrum(const VecC& psi_full, const ConstrainedBasis& basis) {
  const ChainGeometry& g = basis.geometry();
  g.validate_even();
  if (!g.periodic()) throw std::invalid_argument("half-chain cut expects a periodic chain");
  if (static_cast<std::size_t>(psi_full.size()) != basis.size())
    throw std::invalid_argument("half-chain entropy needs a full-basis vector of length " +
                                std::to_string(basis.size()) + "; embed sector vectors first");
  const int half = g.L / 2;
  const ConstrainedBasis part({half, Boundary::open});
  const auto d = static_cast<Eigen::Index>(part.size());
  const state_t low_mask = (state_t{1} << half) - 1;

  MatC m = MatC::Zero(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const state_t s = basis.state(i);
    const auto a = static_cast<Eigen::Index>(part.index_of(s & low_mask));
    const auto b = static_cast<Eigen::Index>(part.index_of(s >> half));
    m(a, b) = psi_full(static_cast<Eigen::Index>(i));
  }
  const MatC rho = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<MatC> es(rho, Eigen::EigenvaluesOnly);
  VecR p = es.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) < 1e-14) p(i) = 0.0;
  return p;
}

double half_chain_entropy(const VecC& psi_full, const ConstrainedBasis& basis) {
  const VecR p = half_chain_spectrum(psi_full, basis);
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s -= p(i) * std::log(p(i));
  return std::max(s, 0.0);
}

VecR overlaps(const MatC& vectors, const VecC& psi) {
  if (vectors.rows() != psi.size()) throw std::invalid_argument("state does not match the eigenvector basis");
  return (vectors.adjoint() * psi).cwiseAbs2();
}

std::vector<EntanglementRecord> entanglement_records(const FloquetSpectrum& spectrum, const Space& space,
                                                     const VecC& psi0) {
  const VecR ov = overlaps(spectrum.vectors, psi0);
  std::vector<EntanglementRecord> out(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const VecC full = space.to_full(spectrum.vectors.col(i));
    out[n] = {spectrum.quasienergies(i), half_chain_entropy(full, space.basis()), ov(i)};
  }
  return out;
}

ScarSet identify_scars(const VecR& quasienergies, const VecR& overlaps, double threshold, double zero_tol) {
  if (quasienergies.size() != overlaps.size()) throw std::invalid_argument("quasienergy and overlap lengths differ");
  ScarSet out;
  out.threshold = threshold;
  std::vector<std::size_t> idx;
  for (Eigen::Index i = 0; i < quasienergies.size(); ++i)
    if (overlaps(i) > threshold && std::abs(quasienergies(i)) > zero_tol) idx.push_back(static_cast<std::size_t>(i));
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return quasienergies(static_cast<Eigen::Index>(a)) < quasienergies(static_cast<Eigen::Index>(b));
  });
  out.members = idx;

  auto energy = [&](std::size_t i) { return quasienergies(static_cast<Eigen::Index>(i)); };
  auto weight = [&](std::size_t i) { return overlaps(static_cast<Eigen::Index>(i)); };
  auto gaps_of = [&](const std::vector<std::size_t>& t) {
    std::vector<double> g(t.size() - 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) g[k] = energy(t[k + 1]) - energy(t[k]);
    return g;
  };

  std::vector<std::size_t> tower = idx;
  while (tower.size() > 2) {
    const std::vector<double> g = gaps_of(tower);
    const double mean_gap = (energy(tower.back()) - energy(tower.front())) / static_cast<double>(g.size());
    const auto k = static_cast<std::size_t>(std::min_element(g.begin(), g.end()) - g.begin());
    if (g[k] >= 0.5 * mean_gap) break;
    tower.erase(tower.begin() + static_cast<std::ptrdiff_t>(weight(tower[k]) < weight(tower[k + 1]) ? k : k + 1));
  }
  out.tower = tower;
  if (tower.size() >= 2) {
    const double wr = median(gaps_of(tower));
    if (wr > 0.0) out.w_R = wr;
  }
  return out;
}

}  // namespace pxp
