#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pxp/linalg.hpp"

namespace pxp {

using state_t = std::uint64_t;

inline constexpr int kMaxSites = 32;

enum class Boundary { periodic, open };

const char* to_string(Boundary b);

struct ChainGeometry {
  int L = 0;
  Boundary boundary = Boundary::periodic;

  /// Throws std::invalid_argument unless 2 <= L <= kMaxSites.
  void validate() const;
  /// Additionally requires an even site count.
  void validate_even() const;
  bool periodic() const { return boundary == Boundary::periodic; }
};

/// Exact Fibonacci number with F_1 = F_2 = 1. Throws std::overflow_error past F_93.
std::uint64_t fibonacci(int n);

/// Site 1 is the least significant bit; a set bit is an up spin.
bool site_up(state_t s, int site);
bool is_constrained(state_t s, const ChainGeometry& g);
int count_up(state_t s);

/// Site 1 is printed first.
std::string to_bitstring(state_t s, int L);
state_t from_bitstring(std::string_view bits);

/**
 * Sorted list of blockade-respecting configurations with an exact inverse map.
 *
 * Copies share the underlying storage.
 */
class ConstrainedBasis {
 public:
  explicit ConstrainedBasis(ChainGeometry g);

  const ChainGeometry& geometry() const { return geometry_; }
  int sites() const { return geometry_.L; }
  std::size_t size() const { return states_->size(); }
  state_t state(std::size_t i) const { return (*states_)[i]; }
  const std::vector<state_t>& states() const { return *states_; }

  std::optional<std::size_t> find(state_t s) const;
  /// Throws std::out_of_range for states outside the basis.
  std::size_t index_of(state_t s) const;

 private:
  ChainGeometry geometry_;
  std::shared_ptr<const std::vector<state_t>> states_;
};

ConstrainedBasis enumerate_basis(const ChainGeometry& g);

/// Ordered pairs of basis states connected by the constrained transverse field.
std::uint64_t count_pxp_pairs(const ConstrainedBasis& basis);
/// Closed form 2 L F_{L-1} of the same count. Periodic chains with L >= 3.
std::uint64_t pxp_pair_formula(const ChainGeometry& g);

struct SymmetryOp {
  enum class Kind { translate, reflect, chiral };
  Kind kind = Kind::translate;
  int shift = 0;

  static SymmetryOp translate_by(int r) { return {Kind::translate, r}; }
  static SymmetryOp reflect() { return {Kind::reflect, 0}; }
  /// Product of sigma^z over all sites.
  static SymmetryOp chiral() { return {Kind::chiral, 0}; }
};

struct SymmetryImage {
  state_t state;
  int phase;
};

/// Translation moves site i to site i + r. Reflection maps site i to L + 1 - i.
SymmetryImage apply_symmetry(state_t s, const SymmetryOp& op, const ChainGeometry& g);

state_t translate(state_t s, int r, int L);
state_t reflect(state_t s, int L);

/**
 * Lattice momentum 2 pi k / L, and an optional bond-centred reflection parity.
 * Parity is defined only for k = 0 and k = L/2.
 */
struct SymmetrySector {
  int momentum = 0;
  int parity = 0;  // +1, -1, or 0 when reflection is not imposed

  std::string tag() const;
};

/**
 * Symmetry-adapted basis of one momentum (and parity) sector.
 *
 * Each column of the embedding is a normalized orbit sum
 * sum_g chi(g)^* g|r>, where r is the smallest configuration of the orbit.
 * Every full-basis state belongs to at most one column.
 */
class SectorBasis {
 public:
  SectorBasis(ConstrainedBasis full, SymmetrySector sector);

  const ConstrainedBasis& full() const { return full_; }
  const SymmetrySector& sector() const { return sector_; }
  std::size_t dim() const { return representatives_.size(); }
  const std::vector<state_t>& representatives() const { return representatives_; }
  /// Norm of the unnormalized orbit sum of each representative.
  const std::vector<double>& norms() const { return norms_; }
  /// True when all embedding coefficients are real (k = 0 or k = L/2).
  bool is_real() const;

  /// Column index of a full-basis state, or -1 if its orbit is incompatible.
  std::int64_t column_of(std::size_t full_index) const { return column_[full_index]; }
  cplx coefficient(std::size_t full_index) const { return coefficient_[full_index]; }

  VecC embed(const VecC& v) const;
  /// Orthogonal projection coefficients E^dagger psi.
  VecC project(const VecC& psi) const;
  MatC embedding_matrix() const;

 private:
  ConstrainedBasis full_;
  SymmetrySector sector_;
  std::vector<state_t> representatives_;
  std::vector<double> norms_;
  std::vector<std::int64_t> column_;
  std::vector<cplx> coefficient_;
};

SectorBasis build_sector_basis(const ConstrainedBasis& basis, SymmetrySector sector);

}  // namespace pxp
