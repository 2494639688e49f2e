#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pxp/constrained_hilbert.hpp"

using namespace pxp;

TEST(Fibonacci, FirstTermsAndLimits) {
  const std::uint64_t expect[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(fibonacci(n), expect[n - 1]);
  EXPECT_EQ(fibonacci(93), 12200160415121876738ULL);
  EXPECT_THROW(fibonacci(0), std::invalid_argument);
  EXPECT_THROW(fibonacci(94), std::overflow_error);
}

TEST(Geometry, RejectsBadSizes) {
  EXPECT_THROW((ChainGeometry{1, Boundary::periodic}.validate()), std::invalid_argument);
  EXPECT_THROW((ChainGeometry{33, Boundary::periodic}.validate()), std::invalid_argument);
  EXPECT_THROW((ChainGeometry{7, Boundary::periodic}.validate_even()), std::invalid_argument);
  EXPECT_NO_THROW((ChainGeometry{32, Boundary::open}.validate()));
}

TEST(Bitstrings, SiteOneIsPrintedFirst) {
  EXPECT_EQ(to_bitstring(0b0101, 4), "1010");
  EXPECT_EQ(from_bitstring("1010"), state_t{0b0101});
  EXPECT_EQ(from_bitstring(to_bitstring(0b100101, 6)), state_t{0b100101});
  EXPECT_THROW(from_bitstring("10a"), std::invalid_argument);
}

TEST(Basis, SmallPeriodicChainByHand) {
  ConstrainedBasis b({4, Boundary::periodic});
  // 0000, four singles, 1010 and 0101
  ASSERT_EQ(b.size(), 7u);
  EXPECT_TRUE(std::is_sorted(b.states().begin(), b.states().end()));
  EXPECT_TRUE(b.find(0b0101).has_value());
  EXPECT_FALSE(b.find(0b1001).has_value());
  EXPECT_THROW(b.index_of(0b0011), std::out_of_range);
}

TEST(Basis, DimensionsMatchFibonacciAndExhaustiveFilter) {
  for (int L = 4; L <= 20; L += 2) {
    ConstrainedBasis pbc({L, Boundary::periodic});
    ConstrainedBasis obc({L, Boundary::open});
    EXPECT_EQ(pbc.size(), fibonacci(L - 1) + fibonacci(L + 1)) << L;
    EXPECT_EQ(obc.size(), fibonacci(L + 2)) << L;
    if (L <= 16) {
      EXPECT_EQ(pbc.states(), oracle::filtered_states(L, true)) << L;
      EXPECT_EQ(obc.states(), oracle::filtered_states(L, false)) << L;
    }
  }
}

TEST(Basis, OddChainsAlsoEnumerate) {
  for (int L : {3, 5, 9, 13}) {
    ConstrainedBasis pbc({L, Boundary::periodic});
    EXPECT_EQ(pbc.states(), oracle::filtered_states(L, true)) << L;
  }
}

TEST(Basis, IndexMapRoundTrips) {
  ConstrainedBasis b({12, Boundary::periodic});
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index_of(b.state(i)), i);
}

TEST(PairCount, MatchesClosedFormAndBruteForce) {
  for (int L : {4, 6, 8, 10, 14}) {
    ConstrainedBasis b({L, Boundary::periodic});
    const std::uint64_t formula = 2ULL * static_cast<std::uint64_t>(L) * fibonacci(L - 1);
    EXPECT_EQ(pxp_pair_formula(b.geometry()), formula);
    EXPECT_EQ(count_pxp_pairs(b), formula) << L;
  }
  // Oracle count from the unconstrained Kronecker construction.
  for (int L : {4, 6, 8, 10}) {
    const auto states = oracle::filtered_states(L, true);
    const auto x = oracle::restrict(oracle::constrained_sum(L, 'x', true), states);
    std::uint64_t nz = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j)
        if (i != j && std::abs(x(i, j)) > 0.5) ++nz;
    EXPECT_EQ(nz, 2ULL * static_cast<std::uint64_t>(L) * fibonacci(L - 1)) << L;
  }
}

TEST(Symmetry, TranslationAndReflectionPreserveTheConstraint) {
  for (int L : {6, 8, 11}) {
    ChainGeometry g{L, Boundary::periodic};
    ConstrainedBasis b(g);
    for (state_t s : b.states()) {
      for (int r = 0; r < L; ++r) EXPECT_TRUE(is_constrained(translate(s, r, L), g));
      EXPECT_TRUE(is_constrained(reflect(s, L), g));
      EXPECT_EQ(reflect(reflect(s, L), L), s);
      EXPECT_EQ(translate(s, L, L), s);
    }
  }
}

TEST(Symmetry, TranslationMovesSiteOneToSiteTwo) {
  EXPECT_EQ(translate(0b0001, 1, 4), state_t{0b0010});
  EXPECT_EQ(translate(0b1000, 1, 4), state_t{0b0001});
  EXPECT_EQ(reflect(0b0001, 4), state_t{0b1000});
}

TEST(Symmetry, ChiralPhaseCountsDownSpins) {
  ChainGeometry g{6, Boundary::periodic};
  auto img = apply_symmetry(0b000101, SymmetryOp::chiral(), g);
  EXPECT_EQ(img.state, state_t{0b000101});
  EXPECT_EQ(img.phase, 1);  // four down spins
  img = apply_symmetry(0b000001, SymmetryOp::chiral(), g);
  EXPECT_EQ(img.phase, -1);
}

namespace {

std::size_t orbit_count(const ConstrainedBasis& b, bool with_reflection) {
  std::set<state_t> seen;
  std::size_t orbits = 0;
  const int L = b.sites();
  for (state_t s : b.states()) {
    if (seen.count(s)) continue;
    ++orbits;
    for (int r = 0; r < L; ++r) {
      seen.insert(translate(s, r, L));
      if (with_reflection) seen.insert(reflect(translate(s, r, L), L));
    }
  }
  return orbits;
}

}  // namespace

TEST(Sectors, DimensionsSumToTheFullBasis) {
  for (int L : {6, 8, 10, 12}) {
    ConstrainedBasis b({L, Boundary::periodic});
    std::size_t total = 0;
    for (int k = 0; k < L; ++k) {
      if (k == 0 || 2 * k == L) {
        total += SectorBasis(b, {k, 1}).dim() + SectorBasis(b, {k, -1}).dim();
      } else {
        total += SectorBasis(b, {k, 0}).dim();
      }
    }
    EXPECT_EQ(total, b.size()) << L;
    EXPECT_EQ(SectorBasis(b, {0, 0}).dim(), orbit_count(b, false)) << L;
  }
}

TEST(Sectors, EmbeddingIsAnIsometry) {
  ConstrainedBasis b({10, Boundary::periodic});
  for (SymmetrySector s : {SymmetrySector{0, 1}, SymmetrySector{0, -1}, SymmetrySector{5, 1}, SymmetrySector{3, 0}}) {
    SectorBasis sb(b, s);
    const MatC e = sb.embedding_matrix();
    const MatC gram = e.adjoint() * e;
    EXPECT_LT((gram - MatC::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-12) << s.tag();
    EXPECT_EQ(sb.is_real(), s.momentum == 0 || 2 * s.momentum == 10);
  }
}

TEST(Sectors, ColumnsAreTranslationEigenvectors) {
  const int L = 8;
  ConstrainedBasis b({L, Boundary::periodic});
  for (int k = 0; k < L; ++k) {
    SectorBasis sb(b, {k, 0});
    const MatC e = sb.embedding_matrix();
    MatC t = MatC::Zero(e.rows(), e.rows());
    for (std::size_t i = 0; i < b.size(); ++i)
      t(static_cast<Eigen::Index>(b.index_of(translate(b.state(i), 1, L))), static_cast<Eigen::Index>(i)) = 1.0;
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * k / L);
    EXPECT_LT((t * e - phase * e).cwiseAbs().maxCoeff(), 1e-12) << k;
  }
}

TEST(Sectors, ParityIsOnlyDefinedAtInvariantMomenta) {
  ConstrainedBasis b({8, Boundary::periodic});
  EXPECT_THROW(SectorBasis(b, {1, 1}), std::invalid_argument);
  EXPECT_THROW(SectorBasis(b, {8, 0}), std::invalid_argument);
  ConstrainedBasis open({8, Boundary::open});
  EXPECT_THROW(SectorBasis(open, {0, 1}), std::invalid_argument);
}

TEST(Sectors, ProjectAndEmbedAreAdjoint) {
  ConstrainedBasis b({12, Boundary::periodic});
  SectorBasis sb(b, {0, 1});
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  VecC v(static_cast<Eigen::Index>(sb.dim()));
  for (auto& x : v) x = {n(rng), n(rng)};
  VecC psi(static_cast<Eigen::Index>(b.size()));
  for (auto& x : psi) x = {n(rng), n(rng)};
  EXPECT_NEAR(std::abs(sb.embed(v).dot(psi) - v.dot(sb.project(psi))), 0.0, 1e-10);
  EXPECT_LT((sb.project(sb.embed(v)) - v).norm(), 1e-12);
}
