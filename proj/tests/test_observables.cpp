#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pxp/observables.hpp"
#include "pxp/states.hpp"

using namespace pxp;

namespace {

const double kW = std::sqrt(2.0);

VecC random_constrained_state(const ConstrainedBasis& b, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  VecC v(static_cast<Eigen::Index>(b.size()));
  for (auto& x : v) x = {g(rng), g(rng)};
  return v.normalized();
}

}  // namespace

TEST(Series, CorrelatorAndFidelityAgreeWithMatrixPowers) {
  ConstrainedBasis b({10, Boundary::periodic});
  const Space sp = Space::full(b);
  DriveProtocol p{kW, 15.0, 8.25};
  const MatC u = build_floquet_operator(sp, p).U;
  const MatC o = build_correlator(sp, 2, 2);
  const VecC psi0 = full_state_vector(b, {InitialState::Kind::z2bar, 0});
  const auto c = correlator_series(psi0, u, o, 40);
  const auto f = fidelity_series(psi0, u, 40);
  ASSERT_EQ(c.values.size(), 41u);
  EXPECT_DOUBLE_EQ(c.values[0], 1.0);  // Z2bar has sites 2 and 4 up
  EXPECT_DOUBLE_EQ(f.values[0], 1.0);
  for (int n : {3, 17, 40}) {
    const VecC psi = u.pow(static_cast<double>(n)) * psi0;
    EXPECT_NEAR(c.values[static_cast<std::size_t>(n)], psi.dot(o * psi).real(), 1e-9);
    EXPECT_NEAR(f.values[static_cast<std::size_t>(n)], std::norm(psi0.dot(psi)), 1e-9);
  }
  const auto both = stroboscopic_dynamics(psi0, u, o, 40);
  EXPECT_EQ(both.correlator.values, c.values);
  EXPECT_EQ(both.fidelity.values, f.values);
}

TEST(Series, ZeroCyclesGivesTheInitialValue) {
  const MatC u = MatC::Identity(2, 2);
  const auto f = fidelity_series(VecC::Unit(2, 0), u, 0);
  ASSERT_EQ(f.values.size(), 1u);
  EXPECT_EQ(f.values[0], 1.0);
}

TEST(Fourier, PureCosineLandsWithinOneBin) {
  const double period = 0.37;
  for (double f : {0.11, 0.5, 1.3}) {
    std::vector<double> s(1000);
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = 0.3 + std::cos(2.0 * std::numbers::pi * f * n * period);
    const FourierSpectrum fs = fourier_peak(s, period);
    ASSERT_TRUE(fs.omega_res.has_value());
    EXPECT_NEAR(fs.bin_width, 2.0 * std::numbers::pi / (1000 * period), 1e-15);
    EXPECT_LE(std::abs(*fs.omega_res - 2.0 * std::numbers::pi * f), fs.bin_width) << f;
    EXPECT_GT(fs.prominence, 10.0);
    EXPECT_FALSE(fs.at_resolution_floor);
    // DC is removed
    EXPECT_LT(fs.power[0], 1e-18);
  }
}

TEST(Fourier, ConstantSeriesHasNoPeak) {
  const FourierSpectrum fs = fourier_peak(std::vector<double>(128, 0.7), 1.0);
  EXPECT_FALSE(fs.omega_res.has_value());
}

TEST(Fourier, SlowDriftIsFlaggedAtTheResolutionFloor) {
  std::vector<double> s(256);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = static_cast<double>(n);
  const FourierSpectrum fs = fourier_peak(s, 1.0);
  ASSERT_TRUE(fs.omega_res.has_value());
  EXPECT_TRUE(fs.at_resolution_floor);
}

TEST(Fourier, RejectsShortSeries) {
  EXPECT_THROW(fourier_peak(std::vector<double>(63, 1.0), 1.0), std::invalid_argument);
  EXPECT_THROW(fourier_peak(std::vector<double>(64, 1.0), 0.0), std::invalid_argument);
}

TEST(Entanglement, ProductStatesHaveZeroEntropy) {
  ConstrainedBasis b({12, Boundary::periodic});
  for (auto k : {InitialState::Kind::z2, InitialState::Kind::z2bar, InitialState::Kind::vacuum})
    EXPECT_NEAR(half_chain_entropy(full_state_vector(b, {k, 0}), b), 0.0, 1e-12);
}

TEST(Entanglement, CatStateHasLogTwo) {
  for (int L : {8, 12, 14}) {
    ConstrainedBasis b({L, Boundary::periodic});
    EXPECT_NEAR(half_chain_entropy(full_state_vector(b, {InitialState::Kind::z2plus, 0}), b), std::log(2.0), 1e-10);
  }
}

TEST(Entanglement, MatchesDensePartialTrace) {
  const int L = 12;
  ConstrainedBasis b({L, Boundary::periodic});
  const auto states = oracle::filtered_states(L, true);
  for (unsigned seed : {1u, 2u, 3u}) {
    const VecC psi = random_constrained_state(b, seed);
    const double ref = oracle::entropy_of(oracle::partial_trace_left(oracle::embed(psi, states, L), L, L / 2));
    EXPECT_NEAR(half_chain_entropy(psi, b), ref, 1e-9);
    const VecR w = half_chain_spectrum(psi, b);
    EXPECT_NEAR(w.sum(), 1.0, 1e-12);
    for (Eigen::Index i = 1; i < w.size(); ++i) EXPECT_LE(w(i), w(i - 1));
  }
}

TEST(Entanglement, FloquetEigenstatesMatchDensePartialTrace) {
  const int L = 12;
  ConstrainedBasis b({L, Boundary::periodic});
  const auto states = oracle::filtered_states(L, true);
  const Space sp = Space::sector(SectorBasis(b, {0, 1}));
  const FloquetSpectrum s = diagonalize_floquet(build_floquet_operator(sp, {kW, 15.0, 15.0}));
  const VecC psi0 = sp.from_full(full_state_vector(b, {InitialState::Kind::z2plus, 0}));
  const auto records = entanglement_records(s, sp, psi0);
  ASSERT_EQ(records.size(), s.size());
  for (std::size_t i = 0; i < s.size(); i += 5) {
    const VecC full = sp.to_full(s.vectors.col(static_cast<Eigen::Index>(i)));
    const double ref = oracle::entropy_of(oracle::partial_trace_left(oracle::embed(full, states, L), L, L / 2));
    EXPECT_NEAR(records[i].entropy, ref, 1e-9);
    EXPECT_EQ(records[i].quasienergy, s.quasienergies(static_cast<Eigen::Index>(i)));
  }
}

TEST(Entanglement, RejectsUnsupportedGeometry) {
  ConstrainedBasis odd({9, Boundary::periodic});
  EXPECT_THROW(half_chain_entropy(VecC::Unit(static_cast<Eigen::Index>(odd.size()), 0), odd), std::invalid_argument);
  ConstrainedBasis b({8, Boundary::periodic});
  EXPECT_THROW(half_chain_entropy(VecC::Unit(3, 0), b), std::invalid_argument);
}

TEST(Overlaps, SumToOneForACompleteBasis) {
  ConstrainedBasis b({10, Boundary::periodic});
  const HermitianEigen e = eigh(build_h_spin(Space::full(b), kW, 0.7));
  const VecR ov = overlaps(e.vectors, random_constrained_state(b, 9));
  EXPECT_NEAR(ov.sum(), 1.0, 1e-12);
  EXPECT_GE(ov.minCoeff(), 0.0);
}

TEST(Scars, SelectionByOverlapAndZeroExclusion) {
  VecR e(6), ov(6);
  e << -2.0, -1.0, 0.0, 0.5, 1.0, 2.0;
  ov << 0.2, 0.2, 0.5, 1e-3, 0.2, 0.2;
  const ScarSet s = identify_scars(e, ov, 1e-2, 1e-8);
  EXPECT_EQ(s.members, (std::vector<std::size_t>{0, 1, 4, 5}));
  ASSERT_TRUE(s.w_R.has_value());
  // gaps 1, 2, 1
  EXPECT_DOUBLE_EQ(*s.w_R, 1.0);
  for (auto i : s.members) EXPECT_GT(ov(static_cast<Eigen::Index>(i)), s.threshold);
}

TEST(Scars, NearDegeneratePartnersAreMergedIntoTheTower) {
  // tower at multiples of 1.2 with a weaker partner 0.05 above each member
  std::vector<double> es, ws;
  for (int n = -4; n <= 4; ++n) {
    if (n == 0) continue;
    es.push_back(1.2 * n);
    ws.push_back(0.1);
    es.push_back(1.2 * n + 0.05);
    ws.push_back(0.02);
  }
  const VecR e = Eigen::Map<VecR>(es.data(), static_cast<Eigen::Index>(es.size()));
  const VecR ov = Eigen::Map<VecR>(ws.data(), static_cast<Eigen::Index>(ws.size()));
  const ScarSet s = identify_scars(e, ov, 1e-2, 1e-8);
  EXPECT_EQ(s.members.size(), 16u);
  EXPECT_EQ(s.tower.size(), 8u);
  for (auto i : s.tower) EXPECT_EQ(ov(static_cast<Eigen::Index>(i)), 0.1);
  ASSERT_TRUE(s.w_R.has_value());
  EXPECT_NEAR(*s.w_R, 1.2, 1e-12);
}

TEST(Scars, TooFewMembersGiveNoGap) {
  VecR e(2), ov(2);
  e << -1.0, 1.0;
  ov << 0.5, 1e-4;
  const ScarSet s = identify_scars(e, ov, 1e-2, 1e-8);
  EXPECT_EQ(s.members.size(), 1u);
  EXPECT_FALSE(s.w_R.has_value());
  EXPECT_THROW(identify_scars(e, VecR(3), 1e-2, 1e-8), std::invalid_argument);
}
