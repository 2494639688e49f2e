#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pxp/linalg.hpp"
#include "pxp/spin_operators.hpp"

namespace pxp {

struct EvolutionOperator {
  MatC U;
  DriveProtocol protocol;
  std::string space_tag;
};

/// One drive period, exp(-i H[+lambda] T/2) exp(-i H[-lambda] T/2), from the
/// spectral decompositions of the two half-period Hamiltonians.
EvolutionOperator build_floquet_operator(const Space& space, const DriveProtocol& protocol);
/// Half-period Hamiltonians in chronological order.
EvolutionOperator build_floquet_operator(const MatC& h_first_half, const MatC& h_second_half,
                                         const DriveProtocol& protocol, std::string space_tag = "full");

/// Quasienergies on (-omega/2, omega/2], ascending, with matching eigenvector columns.
struct FloquetSpectrum {
  VecR quasienergies;
  MatC vectors;
  double omega = 0.0;
  std::string space_tag;

  double period() const;
  std::size_t size() const { return static_cast<std::size_t>(quasienergies.size()); }
};

FloquetSpectrum diagonalize_floquet(const EvolutionOperator& u,
                                    UnitaryMethod method = UnitaryMethod::hermitian_pencil);
/// Sorted quasienergies without eigenvectors.
VecR floquet_quasienergies(const EvolutionOperator& u);

/// max |U - V exp(-i E T) V^dagger|
double reconstruction_residual(const FloquetSpectrum& spectrum, const MatC& u);

struct FloquetHamiltonian {
  MatC matrix;
  /// Some eigenphase lies within 1e-6 of the branch cut at +-pi.
  bool branch_warning = false;
};

/// Principal-branch logarithm, H_F = sum_n E_n |n><n|.
FloquetHamiltonian floquet_hamiltonian_exact(const FloquetSpectrum& spectrum);

using StateVisitor = std::function<void(int cycle, const VecC& state)>;

/// Visits psi_n = U^n psi0 for n = 0..n_max by repeated application.
/// Throws numerical_error when the norm drifts by more than 1e-6.
void evolve_stroboscopic(const VecC& psi0, const MatC& u, int n_max, const StateVisitor& visit);
std::vector<VecC> evolve_stroboscopic(const VecC& psi0, const MatC& u, int n_max);

}  // namespace pxp
