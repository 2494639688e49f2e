#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/SparseCore>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/linalg.hpp"

namespace pxp {

/**
 * Square-pulse drive: the longitudinal field is -lambda for the first half
 * period and +lambda for the second. Units with hbar = 1.
 */
struct DriveProtocol {
  double w = 0.0;
  double lambda = 0.0;
  double omega = 0.0;

  void validate() const;
  double period() const;
  /// lambda T / 4
  double gamma() const;
  /// w T / 4
  double delta() const;
};

/// Drive frequency that realises a given gamma at fixed lambda.
double omega_for_gamma(double lambda, double gamma);

/// Either the full constrained basis or one symmetry sector of it.
class Space {
 public:
  static Space full(ConstrainedBasis basis);
  static Space sector(SectorBasis sector);

  std::size_t dim() const;
  bool is_sector() const { return std::holds_alternative<SectorBasis>(impl_); }
  const ConstrainedBasis& basis() const;
  const SectorBasis& sector_basis() const;
  const ChainGeometry& geometry() const { return basis().geometry(); }
  /// "full" or the sector label.
  std::string tag() const;

  VecC to_full(const VecC& v) const;
  VecC from_full(const VecC& psi) const;

 private:
  explicit Space(std::variant<ConstrainedBasis, SectorBasis> impl) : impl_(std::move(impl)) {}
  std::variant<ConstrainedBasis, SectorBasis> impl_;
};

struct LocalTerm {
  state_t state;
  cplx amplitude;
};

/// Appends O|s> to the output buffer as (state, amplitude) pairs.
using LocalAction = std::function<void(state_t, std::vector<LocalTerm>&)>;

/// Dense matrix of an operator restricted to a space. For sectors this is E^dagger O E.
MatC assemble(const Space& space, const LocalAction& action);
Eigen::SparseMatrix<cplx, Eigen::RowMajor> assemble_sparse(const ConstrainedBasis& basis,
                                                           const LocalAction& action);

enum class ObservableKind { sum_sigma_x_tilde, sum_sigma_y_tilde, sum_sigma_z, n_total };

const char* to_string(ObservableKind k);

LocalAction observable_action(const ChainGeometry& g, ObservableKind kind);
/// n_i n_{i+j} with 1-based i and periodic wraparound.
LocalAction correlator_action(const ChainGeometry& g, int site, int separation);
/// (1/L) sum_i n_i n_{i+j}
LocalAction averaged_correlator_action(const ChainGeometry& g, int separation);

MatC build_observable(const Space& space, ObservableKind kind);
/// -w sum sigma~x + (lambda/2) sum sigma^z, with lambda carrying its sign.
MatC build_h_spin(const Space& space, double w, double lambda_signed);
MatC build_correlator(const Space& space, int site, int separation);
MatC build_averaged_correlator(const Space& space, int separation);

/// Chiral operator prod sigma^z as a diagonal of +-1 over the full basis.
VecR chiral_diagonal(const ConstrainedBasis& basis);
/// Q restricted to a space (Q commutes with translations and reflection).
MatC build_chiral(const Space& space);

/// Coordinate-list dump: header "row,col,re,im" followed by entries above tol.
void write_coo_csv(std::ostream& os, const MatC& m, double tol = 0.0);

}  // namespace pxp
