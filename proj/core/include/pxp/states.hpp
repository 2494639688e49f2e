#pragma once

#include <string>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/spin_operators.hpp"

namespace pxp {

/// Z2 has site 1 up: 1010...; Z2bar is its translate 0101...
struct InitialState {
  enum class Kind { z2, z2bar, z2plus, vacuum, custom };
  Kind kind = Kind::z2;
  state_t bits = 0;  // custom only, site 1 = least significant bit
  int length = 0;    // custom only, number of sites; 0 skips the length check

  static InitialState parse(const std::string& text);
  std::string label() const;
};

state_t neel_state(int L, bool site_one_up);

/// Full-basis vector of the state. Throws std::invalid_argument when it is not constrained.
VecC full_state_vector(const ConstrainedBasis& basis, const InitialState& state);

/// The state expressed in a space; throws if it has weight outside a sector.
VecC state_vector(const Space& space, const InitialState& state);

/// True when the full-basis vector has unit weight inside the sector.
bool lies_in_sector(const SectorBasis& sector, const VecC& psi_full, double tol = 1e-10);

}  // namespace pxp
