#include "pxp/spin_operators.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace pxp {
namespace {

bool flip_allowed(state_t s, int k, const ChainGeometry& g) {
  const int L = g.L;
  if ((s >> k) & 1u) return true;  // lowering never breaks the blockade
  const bool has_left = g.periodic() || k > 0;
  const bool has_right = g.periodic() || k < L - 1;
  if (has_left && ((s >> ((k - 1 + L) % L)) & 1u)) return false;
  if (has_right && ((s >> ((k + 1) % L)) & 1u)) return false;
  return true;
}

std::size_t locate(const ConstrainedBasis& basis, state_t t) {
  auto j = basis.find(t);
  if (!j) throw std::logic_error("operator produced the unconstrained state " + to_bitstring(t, basis.sites()));
  return *j;
}

int wrap_site(const ChainGeometry& g, int site, int separation) {
  if (site < 1 || site > g.L) throw std::invalid_argument("site index must lie in [1, L], got " + std::to_string(site));
  if (separation < 1 || separation >= g.L)
    throw std::invalid_argument("separation must lie in [1, L), got " + std::to_string(separation));
  int other = site + separation;
  if (other > g.L) {
    if (!g.periodic()) throw std::invalid_argument("correlator runs past the open end of the chain");
    other -= g.L;
  }
  return other;
}

}  // namespace

void DriveProtocol::validate() const {
  if (!std::isfinite(w) || !std::isfinite(lambda)) throw std::invalid_argument("drive couplings must be finite");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("drive frequency must be positive and finite");
}

double DriveProtocol::period() const { return 2.0 * std::numbers::pi / omega; }
double DriveProtocol::gamma() const { return lambda * period() / 4.0; }
double DriveProtocol::delta() const { return w * period() / 4.0; }

double omega_for_gamma(double lambda, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return std::numbers::pi * lambda / (2.0 * gamma);
}

Space Space::full(ConstrainedBasis basis) { return Space(std::move(basis)); }
Space Space::sector(SectorBasis sector) { return Space(std::move(sector)); }

std::size_t Space::dim() const {
  if (auto* s = std::get_if<SectorBasis>(&impl_)) return s->dim();
  return std::get<ConstrainedBasis>(impl_).size();
}

const ConstrainedBasis& Space::basis() const {
  if (auto* s = std::get_if<SectorBasis>(&impl_)) return s->full();
  return std::get<ConstrainedBasis>(impl_);
}

const SectorBasis& Space::sector_basis() const {
  if (auto* s = std::get_if<SectorBasis>(&impl_)) return *s;
  throw std::logic_error("space is not a symmetry sector");
}

std::string Space::tag() const { return is_sector() ? sector_basis().sector().tag() : std::string("full"); }

VecC Space::to_full(const VecC& v) const {
  if (is_sector()) return sector_basis().embed(v);
  if (static_cast<std::size_t>(v.size()) != dim()) throw std::invalid_argument("vector does not match the basis");
  return v;
}

VecC Space::from_full(const VecC& psi) const {
  if (is_sector()) return sector_basis().project(psi);
  if (static_cast<std::size_t>(psi.size()) != dim()) throw std::invalid_argument("vector does not match the basis");
  return psi;
}

MatC assemble(const Space& space, const LocalAction& action) {
  const ConstrainedBasis& basis = space.basis();
  const auto n = static_cast<Eigen::Index>(space.dim());
  MatC m = MatC::Zero(n, n);
  std::vector<LocalTerm> terms;
  if (!space.is_sector()) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      terms.clear();
      action(basis.state(i), terms);
      for (const auto& t : terms) m(static_cast<Eigen::Index>(locate(basis, t.state)), static_cast<Eigen::Index>(i)) += t.amplitude;
    }
    return m;
  }
  const SectorBasis& sb = space.sector_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::int64_t b = sb.column_of(i);
    if (b < 0) continue;
    const cplx cb = sb.coefficient(i);
    terms.clear();
    action(basis.state(i), terms);
    for (const auto& t : terms) {
      const std::size_t j = locate(basis, t.state);
      const std::int64_t a = sb.column_of(j);
      if (a < 0) continue;
      m(a, b) += std::conj(sb.coefficient(j)) * t.amplitude * cb;
    }
  }
  return m;
}

Eigen::SparseMatrix<cplx, Eigen::RowMajor> assemble_sparse(const ConstrainedBasis& basis, const LocalAction& action) {
  std::vector<Eigen::Triplet<cplx>> triplets;
  std::vector<LocalTerm> terms;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    terms.clear();
    action(basis.state(i), terms);
    for (const auto& t : terms)
      triplets.emplace_back(static_cast<int>(locate(basis, t.state)), static_cast<int>(i), t.amplitude);
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0});
  return m;
}

const char* to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::sum_sigma_x_tilde:
      return "sum_sigma_x_tilde";
    case ObservableKind::sum_sigma_y_tilde:
      return "sum_sigma_y_tilde";
    case ObservableKind::sum_sigma_z:
      return "sum_sigma_z";
    case ObservableKind::n_total:
      return "n_total";
  }
  return "unknown";
}

LocalAction observable_action(const ChainGeometry& g, ObservableKind kind) {
  switch (kind) {
    case ObservableKind::sum_sigma_x_tilde:
      return [g](state_t s, std::vector<LocalTerm>& out) {
        for (int k = 0; k < g.L; ++k)
          if (flip_allowed(s, k, g)) out.push_back({s ^ (state_t{1} << k), {1.0, 0.0}});
      };
    case ObservableKind::sum_sigma_y_tilde:
      // sigma^y|down> = -i|up>, sigma^y|up> = +i|down>
      return [g](state_t s, std::vector<LocalTerm>& out) {
        for (int k = 0; k < g.L; ++k) {
          if (!flip_allowed(s, k, g)) continue;
          const bool up = (s >> k) & 1u;
          out.push_back({s ^ (state_t{1} << k), up ? cplx{0.0, 1.0} : cplx{0.0, -1.0}});
        }
      };
    case ObservableKind::sum_sigma_z:
      return [g](state_t s, std::vector<LocalTerm>& out) {
        const int up = count_up(s);
        out.push_back({s, {static_cast<double>(2 * up - g.L), 0.0}});
      };
    case ObservableKind::n_total:
      return [](state_t s, std::vector<LocalTerm>& out) { out.push_back({s, {static_cast<double>(count_up(s)), 0.0}}); };
  }
  throw std::logic_error("unknown observable kind");
}

LocalAction correlator_action(const ChainGeometry& g, int site, int separation) {
  const int other = wrap_site(g, site, separation);
  return [site, other](state_t s, std::vector<LocalTerm>& out) {
    const double v = (site_up(s, site) && site_up(s, other)) ? 1.0 : 0.0;
    out.push_back({s, {v, 0.0}});
  };
}

LocalAction averaged_correlator_action(const ChainGeometry& g, int separation) {
  wrap_site(g, 1, separation);
  if (!g.periodic()) throw std::invalid_argument("the translation-averaged correlator needs a periodic chain");
  return [g, separation](state_t s, std::vector<LocalTerm>& out) {
    int hits = 0;
    for (int i = 1; i <= g.L; ++i) {
      const int other = (i - 1 + separation) % g.L + 1;
      if (site_up(s, i) && site_up(s, other)) ++hits;
    }
    out.push_back({s, {static_cast<double>(hits) / g.L, 0.0}});
  };
}

MatC build_observable(const Space& space, ObservableKind kind) {
  return assemble(space, observable_action(space.geometry(), kind));
}

MatC build_h_spin(const Space& space, double w, double lambda_signed) {
  const ChainGeometry& g = space.geometry();
  auto x = observable_action(g, ObservableKind::sum_sigma_x_tilde);
  return assemble(space, [&](state_t s, std::vector<LocalTerm>& out) {
    const std::size_t first = out.size();
    x(s, out);
    for (std::size_t i = first; i < out.size(); ++i) out[i].amplitude *= -w;
    const int up = count_up(s);
    out.push_back({s, {0.5 * lambda_signed * (2 * up - g.L), 0.0}});
  });
}

MatC build_correlator(const Space& space, int site, int separation) {
  return assemble(space, correlator_action(space.geometry(), site, separation));
}

MatC build_averaged_correlator(const Space& space, int separation) {
  return assemble(space, averaged_correlator_action(space.geometry(), separation));
}

VecR chiral_diagonal(const ConstrainedBasis& basis) {
  VecR q(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    q(static_cast<Eigen::Index>(i)) = apply_symmetry(basis.state(i), SymmetryOp::chiral(), basis.geometry()).phase;
  return q;
}

MatC build_chiral(const Space& space) {
  const ChainGeometry& g = space.geometry();
  return assemble(space, [g](state_t s, std::vector<LocalTerm>& out) {
    out.push_back({s, {static_cast<double>(apply_symmetry(s, SymmetryOp::chiral(), g).phase), 0.0}});
  });
}

void write_coo_csv(std::ostream& os, const MatC& m, double tol) {
  os << "row,col,re,im\n";
  char buf[128];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const cplx v = m(i, j);
      if (std::abs(v) <= tol || v == cplx{0.0, 0.0}) continue;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%.12g,%.12g\n", static_cast<long long>(i), static_cast<long long>(j),
                    v.real(), v.imag());
      os << buf;
    }
}

}  // namespace pxp
