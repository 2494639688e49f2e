#pragma once

#include <functional>
#include <vector>

#include "pxp/floquet_engine.hpp"
#include "pxp/spin_operators.hpp"

namespace pxp {

/// Momentum sectors covering the full basis: parity-resolved at k = 0 and
/// k = L/2, momentum-only elsewhere.
std::vector<SymmetrySector> all_sectors(const ChainGeometry& g);

/// Projection of a full-basis state onto one symmetry sector.
struct SectorComponent {
  Space space;
  VecC amplitude;  // sector coordinates, norm^2 = weight in this sector
};

/// Every sector in which the state has weight above cutoff (weights sum to 1).
std::vector<SectorComponent> split_over_sectors(const ConstrainedBasis& basis, const VecC& psi_full,
                                                double cutoff = 1e-14);

/// Spectrum seen by a state: eigenvalues of all sectors it touches with
/// |<v|psi>|^2 weights. Sorted by energy.
struct SpectralWeights {
  VecR energies;
  VecR weights;
  bool branch_warning = false;
};

SpectralWeights floquet_weights(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                UnitaryMethod method = UnitaryMethod::hermitian_pencil);
/// Same for the static Hamiltonian -w sum sigma~x.
SpectralWeights pxp_weights(const std::vector<SectorComponent>& parts, double w);

struct SectorDynamics {
  std::vector<double> observable;  // n = 0..n_max
  std::vector<double> fidelity;    // |<psi_0|psi_n>|^2
};

/**
 * Stroboscopic evolution carried out sector by sector, with the full-basis
 * state reassembled each cycle for a diagonal observable.
 */
SectorDynamics sector_resolved_dynamics(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                        const LocalAction& diagonal_observable, int n_max);
std::vector<double> sector_resolved_series(const std::vector<SectorComponent>& parts, const DriveProtocol& protocol,
                                           const LocalAction& diagonal_observable, int n_max);

}  // namespace pxp
