#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/floquet_engine.hpp"
#include "pxp/linalg.hpp"

namespace pxp {

struct ObservableSeries {
  std::vector<double> values;  // indexed by drive cycle, n = 0..n_max
  std::string observable;
  std::string initial_state;
};

/// <psi_n|O|psi_n> along the stroboscopic orbit.
ObservableSeries correlator_series(const VecC& psi0, const MatC& u, const MatC& observable, int n_max);
/// |<psi_n|psi_0>|^2
ObservableSeries fidelity_series(const VecC& psi0, const MatC& u, int n_max);

/// Correlator and fidelity from a single pass over the orbit.
struct DynamicsResult {
  ObservableSeries correlator;
  ObservableSeries fidelity;
};
DynamicsResult stroboscopic_dynamics(const VecC& psi0, const MatC& u, const MatC& observable, int n_max);

struct FourierSpectrum {
  std::vector<double> frequencies;  // angular, bins 0..N/2
  std::vector<double> power;        // |DFT of mean-subtracted series|^2
  std::optional<double> omega_res;  // largest non-DC bin
  std::size_t peak_bin = 0;
  double bin_width = 0.0;
  /// Peak power over the mean non-DC power.
  double prominence = 0.0;
  /// Peak sits in the first bin, the resolution limit.
  bool at_resolution_floor = false;
};

/// Rectangular-window spectrum of a series sampled once per period. Needs >= 64 samples.
FourierSpectrum fourier_peak(const std::vector<double>& series, double period);

/**
 * von Neumann entropy (nats) of the left half of an even periodic chain.
 *
 * Both halves are open chains; amplitudes are arranged on the product of
 * their constrained bases, with blockade-violating junctions left at zero.
 */
double half_chain_entropy(const VecC& psi_full, const ConstrainedBasis& basis);

/// Schmidt weights of the same bipartition, descending.
VecR half_chain_spectrum(const VecC& psi_full, const ConstrainedBasis& basis);

/// |<psi|v_n>|^2 for every column.
VecR overlaps(const MatC& vectors, const VecC& psi);

struct EntanglementRecord {
  double quasienergy;
  double entropy;
  double overlap;
};

/// Per-eigenstate entropies; sector eigenvectors are embedded before the cut.
std::vector<EntanglementRecord> entanglement_records(const FloquetSpectrum& spectrum, const Space& space,
                                                     const VecC& psi0);

struct ScarSet {
  std::vector<std::size_t> members;  // spectrum indices, ascending quasienergy
  std::vector<std::size_t> tower;    // members left after merging near-degenerate partners
  std::optional<double> w_R;
  double threshold = 1e-2;
};

/**
 * Scar eigenstates: overlap above threshold, excluding |E| <= zero_tol.
 *
 * The gap w_R is the median spacing of the tower obtained by repeatedly
 * merging the closest adjacent pair of members while their spacing is below
 * half the current mean spacing, keeping the member with larger overlap.
 */
ScarSet identify_scars(const VecR& quasienergies, const VecR& overlaps, double threshold, double zero_tol);

}  // namespace pxp
