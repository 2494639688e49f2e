#include "pxp/constrained_hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace pxp {
namespace {

state_t site_mask(int L) { return L >= 64 ? ~state_t{0} : ((state_t{1} << L) - 1); }

void grow(int bit, state_t acc, bool higher_up, const ChainGeometry& g, std::vector<state_t>& out) {
  // Bits are fixed from site L down to site 1 so the output comes out sorted.
  if (bit < 0) {
    out.push_back(acc);
    return;
  }
  grow(bit - 1, acc, false, g, out);
  if (higher_up) return;
  if (bit == 0 && g.periodic() && g.L > 1 && ((acc >> (g.L - 1)) & 1u)) return;
  grow(bit - 1, acc | (state_t{1} << bit), true, g, out);
}

}  // namespace

const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

void ChainGeometry::validate() const {
  if (L < 2) throw std::invalid_argument("chain needs at least 2 sites, got L = " + std::to_string(L));
  if (L > kMaxSites)
    throw std::invalid_argument("L = " + std::to_string(L) + " exceeds the supported maximum of " +
                                std::to_string(kMaxSites) + " sites");
}

void ChainGeometry::validate_even() const {
  validate();
  if (L % 2 != 0) throw std::invalid_argument("operation requires an even number of sites, got L = " + std::to_string(L));
}

std::uint64_t fibonacci(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci index must be >= 1, got " + std::to_string(n));
  if (n > 93) throw std::overflow_error("F_" + std::to_string(n) + " does not fit in 64 bits");
  std::uint64_t a = 1, b = 1;
  for (int i = 2; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

bool site_up(state_t s, int site) { return (s >> (site - 1)) & 1u; }

bool is_constrained(state_t s, const ChainGeometry& g) {
  const state_t m = site_mask(g.L);
  if (s & ~m) return false;
  if (s & (s >> 1)) return false;
  if (g.periodic() && g.L > 1 && (s & 1u) && ((s >> (g.L - 1)) & 1u)) return false;
  return true;
}

int count_up(state_t s) { return std::popcount(s); }

std::string to_bitstring(state_t s, int L) {
  std::string out(static_cast<std::size_t>(L), '0');
  for (int i = 0; i < L; ++i)
    if ((s >> i) & 1u) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

state_t from_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxSites))
    throw std::invalid_argument("bitstring length must be between 1 and " + std::to_string(kMaxSites));
  state_t s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      s |= state_t{1} << i;
    else if (bits[i] != '0')
      throw std::invalid_argument("bitstring may contain only '0' and '1': " + std::string(bits));
  }
  return s;
}

ConstrainedBasis::ConstrainedBasis(ChainGeometry g) : geometry_(g) {
  g.validate();
  auto states = std::make_shared<std::vector<state_t>>();
  const std::uint64_t expected = g.periodic() ? fibonacci(g.L - 1) + fibonacci(g.L + 1) : fibonacci(g.L + 2);
  states->reserve(expected);
  grow(g.L - 1, 0, false, g, *states);
  states_ = std::move(states);
}

std::optional<std::size_t> ConstrainedBasis::find(state_t s) const {
  auto it = std::lower_bound(states_->begin(), states_->end(), s);
  if (it == states_->end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_->begin());
}

std::size_t ConstrainedBasis::index_of(state_t s) const {
  auto i = find(s);
  if (!i) throw std::out_of_range("state " + to_bitstring(s, geometry_.L) + " is not in the constrained basis");
  return *i;
}

ConstrainedBasis enumerate_basis(const ChainGeometry& g) { return ConstrainedBasis(g); }

std::uint64_t count_pxp_pairs(const ConstrainedBasis& basis) {
  const ChainGeometry& g = basis.geometry();
  std::uint64_t count = 0;
  for (state_t s : basis.states()) {
    for (int k = 0; k < g.L; ++k) {
      const state_t t = s ^ (state_t{1} << k);
      if (is_constrained(t, g)) ++count;
    }
  }
  return count;
}

std::uint64_t pxp_pair_formula(const ChainGeometry& g) {
  g.validate();
  if (!g.periodic() || g.L < 3) throw std::invalid_argument("pair-count formula needs a periodic chain with L >= 3");
  return 2u * static_cast<std::uint64_t>(g.L) * fibonacci(g.L - 1);
}

state_t translate(state_t s, int r, int L) {
  r %= L;
  if (r < 0) r += L;
  if (r == 0) return s;
  const state_t m = site_mask(L);
  return ((s << r) | (s >> (L - r))) & m;
}

state_t reflect(state_t s, int L) {
  state_t out = 0;
  for (int i = 0; i < L; ++i)
    if ((s >> i) & 1u) out |= state_t{1} << (L - 1 - i);
  return out;
}

SymmetryImage apply_symmetry(state_t s, const SymmetryOp& op, const ChainGeometry& g) {
  switch (op.kind) {
    case SymmetryOp::Kind::translate:
      return {translate(s, op.shift, g.L), 1};
    case SymmetryOp::Kind::reflect:
      return {reflect(s, g.L), 1};
    case SymmetryOp::Kind::chiral: {
      const int down = g.L - count_up(s);
      return {s, down % 2 == 0 ? 1 : -1};
    }
  }
  throw std::logic_error("unknown symmetry operation");
}

std::string SymmetrySector::tag() const {
  std::string t = "k=" + std::to_string(momentum);
  if (parity != 0) t += parity > 0 ? ",p=+1" : ",p=-1";
  return t;
}

SectorBasis::SectorBasis(ConstrainedBasis full, SymmetrySector sector)
    : full_(std::move(full)), sector_(sector) {
  const ChainGeometry& g = full_.geometry();
  if (!g.periodic()) throw std::invalid_argument("symmetry sectors require a periodic chain");
  const int L = g.L;
  if (sector.momentum < 0 || sector.momentum >= L)
    throw std::invalid_argument("momentum index must lie in [0, L), got " + std::to_string(sector.momentum));
  if (sector.parity != 0 && sector.parity != 1 && sector.parity != -1)
    throw std::invalid_argument("parity must be +1, -1 or 0");
  if (sector.parity != 0 && sector.momentum != 0 && 2 * sector.momentum != L)
    throw std::invalid_argument("reflection parity is only a quantum number at k = 0 and k = L/2");

  const std::size_t n = full_.size();
  column_.assign(n, -1);
  coefficient_.assign(n, cplx{0.0, 0.0});
  std::vector<bool> seen(n, false);
  std::vector<std::pair<state_t, cplx>> orbit;

  auto add = [&orbit](state_t s, cplx c) {
    for (auto& [t, a] : orbit)
      if (t == s) {
        a += c;
        return;
      }
    orbit.emplace_back(s, c);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    const state_t rep = full_.state(i);
    orbit.clear();
    for (int r = 0; r < L; ++r) {
      cplx chi{1.0, 0.0};
      if (2 * sector.momentum == L)
        chi = r % 2 == 0 ? 1.0 : -1.0;
      else if (sector.momentum != 0)
        chi = std::polar(1.0, -2.0 * std::numbers::pi * sector.momentum * r / L);
      const state_t t = translate(rep, r, L);
      add(t, chi);
      if (sector.parity != 0) add(reflect(t, L), static_cast<double>(sector.parity) * chi);
    }
    double norm2 = 0.0;
    for (const auto& [t, c] : orbit) {
      seen[full_.index_of(t)] = true;
      norm2 += std::norm(c);
    }
    if (norm2 < 1e-12) continue;
    const double norm = std::sqrt(norm2);
    const auto col = static_cast<std::int64_t>(representatives_.size());
    for (const auto& [t, c] : orbit) {
      if (std::abs(c) < 1e-12) continue;
      const std::size_t j = full_.index_of(t);
      column_[j] = col;
      coefficient_[j] = c / norm;
    }
    representatives_.push_back(rep);
    norms_.push_back(norm);
  }
}

bool SectorBasis::is_real() const {
  return sector_.momentum == 0 || 2 * sector_.momentum == full_.sites();
}

VecC SectorBasis::embed(const VecC& v) const {
  if (static_cast<std::size_t>(v.size()) != dim())
    throw std::invalid_argument("sector vector has length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(dim()));
  VecC out = VecC::Zero(static_cast<Eigen::Index>(full_.size()));
  for (std::size_t i = 0; i < full_.size(); ++i)
    if (column_[i] >= 0) out(static_cast<Eigen::Index>(i)) = coefficient_[i] * v(column_[i]);
  return out;
}

VecC SectorBasis::project(const VecC& psi) const {
  if (static_cast<std::size_t>(psi.size()) != full_.size())
    throw std::invalid_argument("full-basis vector has length " + std::to_string(psi.size()) + ", expected " +
                                std::to_string(full_.size()));
  VecC out = VecC::Zero(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < full_.size(); ++i)
    if (column_[i] >= 0) out(column_[i]) += std::conj(coefficient_[i]) * psi(static_cast<Eigen::Index>(i));
  return out;
}

MatC SectorBasis::embedding_matrix() const {
  MatC e = MatC::Zero(static_cast<Eigen::Index>(full_.size()), static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < full_.size(); ++i)
    if (column_[i] >= 0) e(static_cast<Eigen::Index>(i), column_[i]) = coefficient_[i];
  return e;
}

SectorBasis build_sector_basis(const ConstrainedBasis& basis, SymmetrySector sector) {
  return SectorBasis(basis, sector);
}

}  // namespace pxp
