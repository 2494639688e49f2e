#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "pxp/observables.hpp"
#include "pxp/sector_resolved.hpp"
#include "pxp/states.hpp"

using namespace pxp;

namespace {

const double kW = std::sqrt(2.0);

}  // namespace

TEST(AllSectors, CoverTheBasisOnce) {
  for (int L : {8, 9, 12}) {
    ConstrainedBasis b({L, Boundary::periodic});
    const auto sectors = all_sectors(b.geometry());
    EXPECT_EQ(sectors.size(), static_cast<std::size_t>(L % 2 ? L + 1 : L + 2));
    std::size_t total = 0;
    for (const auto& s : sectors) total += SectorBasis(b, s).dim();
    EXPECT_EQ(total, b.size());
  }
  EXPECT_THROW(all_sectors({8, Boundary::open}), std::invalid_argument);
}

TEST(Split, ComponentsRebuildTheState) {
  ConstrainedBasis b({12, Boundary::periodic});
  for (auto kind : {InitialState::Kind::z2, InitialState::Kind::z2plus, InitialState::Kind::vacuum}) {
    const VecC psi = full_state_vector(b, {kind, 0});
    const auto parts = split_over_sectors(b, psi);
    VecC back = VecC::Zero(psi.size());
    double weight = 0.0;
    for (const auto& p : parts) {
      back += p.space.to_full(p.amplitude);
      weight += p.amplitude.squaredNorm();
    }
    EXPECT_NEAR(weight, 1.0, 1e-12);
    EXPECT_LT((back - psi).norm(), 1e-12);
  }
  // Z2 lives in the two translation-invariant parity-even sectors, k = 0 and k = pi
  const auto z2 = split_over_sectors(b, full_state_vector(b, {InitialState::Kind::z2, 0}));
  ASSERT_EQ(z2.size(), 2u);
  EXPECT_EQ(z2[0].space.tag(), "k=0,p=+1");
  EXPECT_NEAR(z2[0].amplitude.squaredNorm(), 0.5, 1e-12);
}

TEST(SectorSeries, MatchesTheFullBasisEvolution) {
  ConstrainedBasis b({12, Boundary::periodic});
  const Space full = Space::full(b);
  DriveProtocol p{kW, 15.0, 15.0};
  const VecC psi = full_state_vector(b, {InitialState::Kind::z2, 0});
  const auto parts = split_over_sectors(b, psi);
  const auto fast = sector_resolved_series(parts, p, correlator_action(b.geometry(), 2, 2), 120);
  const auto ref = correlator_series(psi, build_floquet_operator(full, p).U, build_correlator(full, 2, 2), 120).values;
  ASSERT_EQ(fast.size(), ref.size());
  for (std::size_t n = 0; n < ref.size(); ++n) EXPECT_NEAR(fast[n], ref[n], 1e-10) << n;

  const auto both = sector_resolved_dynamics(parts, p, correlator_action(b.geometry(), 2, 2), 120);
  const auto fid = fidelity_series(psi, build_floquet_operator(full, p).U, 120).values;
  EXPECT_EQ(both.observable, fast);
  for (std::size_t n = 0; n < fid.size(); ++n) EXPECT_NEAR(both.fidelity[n], fid[n], 1e-10) << n;
}

TEST(SectorSeries, RejectsOffDiagonalObservables) {
  ConstrainedBasis b({8, Boundary::periodic});
  const auto parts = split_over_sectors(b, full_state_vector(b, {InitialState::Kind::z2, 0}));
  EXPECT_THROW(sector_resolved_series(parts, {kW, 15.0, 15.0},
                                      observable_action(b.geometry(), ObservableKind::sum_sigma_x_tilde), 4),
               std::invalid_argument);
  EXPECT_THROW(sector_resolved_series({}, {kW, 15.0, 15.0}, correlator_action(b.geometry(), 1, 2), 4),
               std::invalid_argument);
}

TEST(SpectralWeights, ReproduceReturnAmplitudes) {
  ConstrainedBasis b({12, Boundary::periodic});
  DriveProtocol p{kW, 15.0, 9.0};
  const VecC psi = full_state_vector(b, {InitialState::Kind::z2, 0});
  const SpectralWeights sw = floquet_weights(split_over_sectors(b, psi), p);
  EXPECT_TRUE(std::is_sorted(sw.energies.begin(), sw.energies.end()));
  EXPECT_NEAR(sw.weights.sum(), 1.0, 1e-12);
  const MatC u = build_floquet_operator(Space::full(b), p).U;
  for (int n : {1, 5, 23}) {
    cplx amp = 0.0;
    for (Eigen::Index i = 0; i < sw.energies.size(); ++i)
      amp += sw.weights(i) * std::polar(1.0, -sw.energies(i) * p.period() * n);
    const cplx ref = psi.dot(u.pow(static_cast<double>(n)) * psi);
    EXPECT_LT(std::abs(amp - ref), 1e-10) << n;
  }
}

TEST(SpectralWeights, StaticMomentsOfTheNeelState) {
  const int L = 14;
  ConstrainedBasis b({L, Boundary::periodic});
  const SpectralWeights sw = pxp_weights(split_over_sectors(b, full_state_vector(b, {InitialState::Kind::z2, 0})), kW);
  EXPECT_NEAR(sw.weights.dot(sw.energies), 0.0, 1e-12);
  // each of the L/2 up spins can flip
  EXPECT_NEAR(sw.weights.dot(sw.energies.cwiseAbs2()), kW * kW * L / 2.0, 1e-10);
}
