#include "pxp/effective_hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace pxp {

double magnus_c1(double gamma) { return 1.0 - 2.0 * gamma * gamma / 3.0; }

double magnus_c2(double gamma, double delta) {
  return gamma * (1.0 - (gamma * gamma - 4.0 * delta * delta) / 3.0);
}

MagnusTerms magnus_terms(const Space& space, const DriveProtocol& protocol, int max_order) {
  protocol.validate();
  if (max_order < 0 || max_order > 3) throw std::invalid_argument("Magnus order must lie in [0, 3]");
  const double w = protocol.w;
  const double g = protocol.gamma();
  const double d = protocol.delta();
  const MatC x = build_observable(space, ObservableKind::sum_sigma_x_tilde);
  const MatC y = build_observable(space, ObservableKind::sum_sigma_y_tilde);
  const auto n = static_cast<Eigen::Index>(space.dim());

  MagnusTerms t;
  for (auto& m : t.order) m = MatC::Zero(n, n);
  t.order[0] = -w * x;
  if (max_order >= 1) t.order[1] = -w * g * y;
  if (max_order >= 2) t.order[2] = (2.0 * w / 3.0) * g * g * x;
  MatC nested = MatC::Zero(n, n);
  if (max_order >= 3) {
    const MatC xy = x * y - y * x;
    nested = x * xy - xy * x;
    t.order[3] = (w * g * g * g / 3.0) * y - (protocol.lambda * d * d * d / 3.0) * nested;
  }

  // Regroup: the nested commutator contributes 4Y to the renormalized PXP part.
  t.C1 = max_order >= 2 ? magnus_c1(g) : 1.0;
  if (max_order >= 3)
    t.C2 = magnus_c2(g, d);
  else if (max_order >= 1)
    t.C2 = g;
  t.H0 = -w * (t.C1 * x + t.C2 * y);
  t.H1 = MatC::Zero(n, n);
  if (max_order >= 3) t.H1 = -(protocol.lambda * d * d * d / 3.0) * (nested - 4.0 * y);
  return t;
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

MatC fpt_closed_form(const Space& space, const DriveProtocol& protocol) {
  protocol.validate();
  const double g = protocol.gamma();
  const double amp = -protocol.w * sinc(g);
  const MatC x = build_observable(space, ObservableKind::sum_sigma_x_tilde);
  const MatC y = build_observable(space, ObservableKind::sum_sigma_y_tilde);
  return amp * (std::cos(g) * x + std::sin(g) * y);
}

double ResummedPXP::x_coefficient(double gamma) const {
  double s = 0.0;
  for (const auto& t : x_channel) s += t.value() * std::pow(gamma, t.power);
  return s;
}

double ResummedPXP::y_coefficient(double gamma) const {
  double s = 0.0;
  for (const auto& t : y_channel) s += t.value() * std::pow(gamma, t.power);
  return s;
}

const ResummedPXP& resummed_pxp_series() {
  static const ResummedPXP series{
      {{0, 1, 1}, {2, -2, 3}, {4, 2, 15}, {6, -4, 315}, {8, 2, 2835}, {10, -4, 155925}},
      {{1, 1, 1}, {3, -1, 3}, {5, 2, 45}, {7, -1, 315}, {9, 2, 14175}, {11, -2, 467775}},
  };
  return series;
}

double resummed_x_closed_form(double gamma) { return sinc(gamma) * std::cos(gamma); }

double resummed_y_closed_form(double gamma) { return std::sin(gamma) * sinc(gamma); }

NormSplit norm_split(const MatC& h_floquet, const ConstrainedBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (h_floquet.rows() != n || h_floquet.cols() != n)
    throw std::invalid_argument("norm split needs H_F in the full constrained basis");
  const ChainGeometry& g = basis.geometry();

  double connected = 0.0;
  std::uint64_t pairs = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const state_t s = basis.state(static_cast<std::size_t>(i));
    for (int k = 0; k < g.L; ++k) {
      const state_t t = s ^ (state_t{1} << k);
      if (!is_constrained(t, g)) continue;
      const auto j = static_cast<Eigen::Index>(basis.index_of(t));
      connected += std::norm(h_floquet(j, i));
      ++pairs;
    }
  }
  const double total = h_floquet.squaredNorm();
  NormSplit out;
  out.n0 = pairs;
  if (pairs == 0) return out;
  out.f1 = connected / static_cast<double>(pairs);
  out.f2 = std::max(total - connected, 0.0) / static_cast<double>(pairs);
  return out;
}

double f1_analytic(double w, double gamma) {
  const double s = sinc(gamma);
  return w * w * s * s;
}

std::vector<double> critical_frequencies(double lambda, int q_max) {
  if (!(lambda > 0.0)) throw std::invalid_argument("drive amplitude must be positive");
  if (q_max < 1) throw std::invalid_argument("q_max must be at least 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(q_max));
  for (int q = 1; q <= q_max; ++q) out.push_back(lambda / (2.0 * q));
  return out;
}

double scar_gap_prediction(const DriveProtocol& protocol, double w_inf) { return w_inf * sinc(protocol.gamma()); }

}  // namespace pxp
