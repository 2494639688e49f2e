#include "pxp/floquet_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace pxp {
namespace {

MatC half_period_propagator(const MatC& h, double dt, const std::string& context) {
  HermitianEigen e;
  try {
    e = eigh_auto(h);
  } catch (const numerical_error& err) {
    throw numerical_error(std::string(err.what()) + " while diagonalizing " + context);
  }
  VecC phase(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) phase(i) = std::polar(1.0, -e.values(i) * dt);
  return e.vectors * phase.asDiagonal() * e.vectors.adjoint();
}

std::string describe(const DriveProtocol& p, const std::string& tag) {
  std::ostringstream os;
  os << "sector " << tag << " at w=" << p.w << " lambda=" << p.lambda << " omega=" << p.omega;
  return os.str();
}

}  // namespace

EvolutionOperator build_floquet_operator(const Space& space, const DriveProtocol& protocol) {
  protocol.validate();
  const MatC h_first = build_h_spin(space, protocol.w, -protocol.lambda);
  const MatC h_second = build_h_spin(space, protocol.w, protocol.lambda);
  return build_floquet_operator(h_first, h_second, protocol, space.tag());
}

EvolutionOperator build_floquet_operator(const MatC& h_first_half, const MatC& h_second_half,
                                         const DriveProtocol& protocol, std::string space_tag) {
  protocol.validate();
  const double dt = protocol.period() / 2.0;
  const std::string ctx = describe(protocol, space_tag);
  const MatC u_first = half_period_propagator(h_first_half, dt, "H[-lambda], " + ctx);
  const MatC u_second = half_period_propagator(h_second_half, dt, "H[+lambda], " + ctx);
  return {u_second * u_first, protocol, std::move(space_tag)};
}

double FloquetSpectrum::period() const { return 2.0 * std::numbers::pi / omega; }

FloquetSpectrum diagonalize_floquet(const EvolutionOperator& u, UnitaryMethod method) {
  UnitaryEigen e = unitary_eig(u.U, method);
  const Eigen::Index n = e.phases.size();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(e.moduli(i) - 1.0) > 1e-8)
      throw numerical_error("Floquet operator eigenvalue has modulus " + std::to_string(e.moduli(i)) + " in " +
                            describe(u.protocol, u.space_tag));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return e.phases(a) < e.phases(b); });

  FloquetSpectrum s;
  s.omega = u.protocol.omega;
  s.space_tag = u.space_tag;
  s.quasienergies.resize(n);
  s.vectors.resize(n, n);
  const double period = u.protocol.period();
  for (Eigen::Index i = 0; i < n; ++i) {
    s.quasienergies(i) = e.phases(order[static_cast<std::size_t>(i)]) / period;
    s.vectors.col(i) = e.vectors.col(order[static_cast<std::size_t>(i)]);
  }
  return s;
}

VecR floquet_quasienergies(const EvolutionOperator& u) {
  VecR phases = unitary_phases(u.U);
  std::sort(phases.data(), phases.data() + phases.size());
  return phases / u.protocol.period();
}

double reconstruction_residual(const FloquetSpectrum& spectrum, const MatC& u) {
  const double period = spectrum.period();
  VecC phase(spectrum.quasienergies.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::polar(1.0, -spectrum.quasienergies(i) * period);
  return max_abs(u - spectrum.vectors * phase.asDiagonal() * spectrum.vectors.adjoint());
}

FloquetHamiltonian floquet_hamiltonian_exact(const FloquetSpectrum& spectrum) {
  FloquetHamiltonian out;
  const double period = spectrum.period();
  for (Eigen::Index i = 0; i < spectrum.quasienergies.size(); ++i)
    if (std::abs(spectrum.quasienergies(i) * period) > std::numbers::pi - 1e-6) out.branch_warning = true;
  out.matrix = spectrum.vectors * spectrum.quasienergies.cast<cplx>().asDiagonal() * spectrum.vectors.adjoint();
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  return out;
}

void evolve_stroboscopic(const VecC& psi0, const MatC& u, int n_max, const StateVisitor& visit) {
  if (n_max < 0) throw std::invalid_argument("number of drive cycles must be non-negative");
  if (psi0.size() != u.rows()) throw std::invalid_argument("initial state does not match the evolution operator");
  const double norm0 = psi0.norm();
  if (std::abs(norm0 - 1.0) > 1e-9) throw std::invalid_argument("initial state is not normalized");
  VecC psi = psi0;
  VecC next(psi.size());
  visit(0, psi);
  for (int n = 1; n <= n_max; ++n) {
    next.noalias() = u * psi;
    psi.swap(next);
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-6)
      throw numerical_error("state norm drifted by " + std::to_string(drift) + " after " + std::to_string(n) +
                            " cycles");
    visit(n, psi);
  }
}

std::vector<VecC> evolve_stroboscopic(const VecC& psi0, const MatC& u, int n_max) {
  std::vector<VecC> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
  evolve_stroboscopic(psi0, u, n_max, [&](int, const VecC& psi) { out.push_back(psi); });
  return out;
}

}  // namespace pxp
