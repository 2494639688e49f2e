#include "pxp/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pxp {

InitialState InitialState::parse(const std::string& text) {
  if (text == "Z2" || text == "z2") return {Kind::z2, 0};
  if (text == "Z2bar" || text == "z2bar") return {Kind::z2bar, 0};
  if (text == "Z2plus" || text == "z2plus") return {Kind::z2plus, 0};
  if (text == "vacuum") return {Kind::vacuum, 0};
  if (!text.empty() && text.find_first_not_of("01") == std::string::npos) return {Kind::custom, from_bitstring(text), static_cast<int>(text.size())};
  throw std::invalid_argument("unknown initial state '" + text + "' (expected Z2, Z2bar, Z2plus, vacuum or a bitstring)");
}

std::string InitialState::label() const {
  switch (kind) {
    case Kind::z2:
      return "Z2";
    case Kind::z2bar:
      return "Z2bar";
    case Kind::z2plus:
      return "Z2plus";
    case Kind::vacuum:
      return "vacuum";
    case Kind::custom:
      return "custom";
  }
  return "unknown";
}

state_t neel_state(int L, bool site_one_up) {
  state_t s = 0;
  for (int i = site_one_up ? 0 : 1; i < L; i += 2) s |= state_t{1} << i;
  return s;
}

VecC full_state_vector(const ConstrainedBasis& basis, const InitialState& state) {
  const ChainGeometry& g = basis.geometry();
  VecC psi = VecC::Zero(static_cast<Eigen::Index>(basis.size()));
  auto put = [&](state_t s, cplx amp) {
    auto i = basis.find(s);
    if (!i) throw std::invalid_argument("initial state " + to_bitstring(s, g.L) + " violates the blockade constraint");
    psi(static_cast<Eigen::Index>(*i)) += amp;
  };
  switch (state.kind) {
    case InitialState::Kind::z2:
    case InitialState::Kind::z2bar:
    case InitialState::Kind::z2plus:
      if (g.L % 2 != 0) throw std::invalid_argument("Neel states need an even number of sites");
      break;
    default:
      break;
  }
  switch (state.kind) {
    case InitialState::Kind::z2:
      put(neel_state(g.L, true), 1.0);
      break;
    case InitialState::Kind::z2bar:
      put(neel_state(g.L, false), 1.0);
      break;
    case InitialState::Kind::z2plus:
      put(neel_state(g.L, true), 1.0 / std::numbers::sqrt2);
      put(neel_state(g.L, false), 1.0 / std::numbers::sqrt2);
      break;
    case InitialState::Kind::vacuum:
      put(0, 1.0);
      break;
    case InitialState::Kind::custom:
      if ((state.length != 0 && state.length != g.L) || (state.bits >> g.L))
        throw std::invalid_argument("custom bitstring length does not match L = " + std::to_string(g.L));
      put(state.bits, 1.0);
      break;
  }
  return psi;
}

bool lies_in_sector(const SectorBasis& sector, const VecC& psi_full, double tol) {
  const VecC p = sector.project(psi_full);
  return std::abs(p.squaredNorm() - psi_full.squaredNorm()) <= tol;
}

VecC state_vector(const Space& space, const InitialState& state) {
  const VecC full = full_state_vector(space.basis(), state);
  if (!space.is_sector()) return full;
  if (!lies_in_sector(space.sector_basis(), full))
    throw std::invalid_argument("initial state " + state.label() + " has weight outside sector " + space.tag());
  return space.sector_basis().project(full);
}

}  // namespace pxp
