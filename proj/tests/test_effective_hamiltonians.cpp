#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pxp/effective_hamiltonians.hpp"
#include "pxp/floquet_engine.hpp"

using namespace pxp;

namespace {

const double kW = std::sqrt(2.0);

MatC exact_hf(const Space& sp, const DriveProtocol& p) {
  return floquet_hamiltonian_exact(diagonalize_floquet(build_floquet_operator(sp, p))).matrix;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Taylor coefficient of gamma^p in sin(2g)/(2g) and (1 - cos 2g)/(2g).
double x_taylor(int p) {
  if (p % 2) return 0.0;
  const int n = p / 2;
  return (n % 2 ? -1.0 : 1.0) * std::pow(4.0, n) / factorial(2 * n + 1);
}
double y_taylor(int p) {
  if (p % 2 == 0) return 0.0;
  const int n = (p + 1) / 2;
  return (n % 2 ? 1.0 : -1.0) * std::pow(2.0, 2 * n - 1) / factorial(2 * n);
}

}  // namespace

TEST(Magnus, RegroupedFormEqualsTheOrderSum) {
  ConstrainedBasis b({8, Boundary::periodic});
  const Space sp = Space::full(b);
  DriveProtocol p{kW, 2.0, 30.0};
  const MagnusTerms t = magnus_terms(sp, p);
  const MatC sum = t.order[0] + t.order[1] + t.order[2] + t.order[3];
  EXPECT_LT((t.H0 + t.H1 - sum).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(t.C1, 1.0 - 2.0 * p.gamma() * p.gamma() / 3.0, 1e-15);
  for (const auto& m : t.order) EXPECT_LT(hermiticity_residual(m), 1e-12);
}

TEST(Magnus, TruncationErrorFallsWithTheExpectedPower) {
  ConstrainedBasis b({8, Boundary::periodic});
  const Space sp = Space::full(b);
  for (int order = 0; order <= 3; ++order) {
    std::vector<double> err;
    for (double omega : {80.0, 160.0, 320.0}) {
      DriveProtocol p{kW, 2.0, omega};
      const MagnusTerms t = magnus_terms(sp, p, order);
      MatC approx = MatC::Zero(t.H0.rows(), t.H0.cols());
      for (int k = 0; k <= order; ++k) approx += t.order[static_cast<std::size_t>(k)];
      err.push_back((exact_hf(sp, p) - approx).norm());
    }
    const double expected = std::pow(2.0, order + 1);
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double ratio = err[i] / err[i + 1];
      EXPECT_GT(ratio, 0.8 * expected) << "order " << order;
      EXPECT_LT(ratio, 1.25 * expected) << "order " << order;
    }
  }
}

TEST(Magnus, RejectsUnsupportedOrders) {
  ConstrainedBasis b({6, Boundary::periodic});
  EXPECT_THROW(magnus_terms(Space::full(b), {kW, 2.0, 30.0}, 4), std::invalid_argument);
}

TEST(FirstOrderPerturbation, ApproachesExactAtLargeLambda) {
  ConstrainedBasis b({8, Boundary::periodic});
  const Space sp = Space::full(b);
  for (double gamma : {0.5, 1.0, 2.0}) {
    std::vector<double> rel;
    for (double ratio : {10.0, 40.0}) {
      const double lambda = ratio * kW;
      DriveProtocol p{kW, lambda, omega_for_gamma(lambda, gamma)};
      const MatC exact = exact_hf(sp, p);
      rel.push_back((exact - fpt_closed_form(sp, p)).norm() / exact.norm());
      EXPECT_LT(rel.back(), 10.0 / ratio) << gamma;
    }
    EXPECT_LT(rel[1], rel[0]) << gamma;
  }
}

TEST(FirstOrderPerturbation, ClosedFormDetails) {
  EXPECT_DOUBLE_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(1e-9), 1.0, 1e-16);
  EXPECT_NEAR(sinc(std::numbers::pi), 0.0, 1e-16);
  ConstrainedBasis b({6, Boundary::periodic});
  const Space sp = Space::full(b);
  DriveProtocol p{kW, 15.0, 15.0};  // gamma = pi/2: pure sigma~y term
  const MatC y = build_observable(sp, ObservableKind::sum_sigma_y_tilde);
  EXPECT_LT((fpt_closed_form(sp, p) + kW * (2.0 / std::numbers::pi) * y).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ResummedSeries, CoefficientsAreTaylorCoefficientsOfTheClosedForms) {
  const ResummedPXP& s = resummed_pxp_series();
  ASSERT_EQ(s.x_channel.back().power, 10);
  ASSERT_EQ(s.y_channel.back().power, 11);
  for (const auto& t : s.x_channel) EXPECT_NEAR(t.value(), x_taylor(t.power), 1e-12) << t.power;
  for (const auto& t : s.y_channel) EXPECT_NEAR(t.value(), y_taylor(t.power), 1e-12) << t.power;
  for (double g : {0.05, 0.2, 0.4}) {
    EXPECT_NEAR(s.x_coefficient(g), resummed_x_closed_form(g), 1e-9);
    EXPECT_NEAR(s.y_coefficient(g), resummed_y_closed_form(g), 1e-9);
  }
  EXPECT_NEAR(resummed_x_closed_form(0.7), std::sin(0.7) * std::cos(0.7) / 0.7, 1e-15);
  EXPECT_NEAR(resummed_y_closed_form(0.7), std::sin(0.7) * std::sin(0.7) / 0.7, 1e-15);
}

TEST(ResummedSeries, LeadingTermsMatchTheMagnusOrders) {
  ConstrainedBasis b({6, Boundary::periodic});
  const Space sp = Space::full(b);
  DriveProtocol p{kW, 2.0, 50.0};
  const MagnusTerms t = magnus_terms(sp, p, 2);
  const MatC x = build_observable(sp, ObservableKind::sum_sigma_x_tilde);
  const double g = p.gamma();
  const ResummedPXP& s = resummed_pxp_series();
  const double cx = s.x_channel[0].value() + s.x_channel[1].value() * g * g;
  EXPECT_LT((t.order[0] + t.order[2] + kW * cx * x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NormSplit, PureTransverseFieldIsAllNearestNeighbour) {
  for (int L : {6, 10}) {
    ConstrainedBasis b({L, Boundary::periodic});
    const Space sp = Space::full(b);
    const NormSplit ns = norm_split(build_h_spin(sp, kW, 0.0), b);
    EXPECT_EQ(ns.n0, pxp_pair_formula(b.geometry()));
    EXPECT_NEAR(ns.f1, 2.0, 1e-12);
    EXPECT_NEAR(ns.f2, 0.0, 1e-15);
    // adding a diagonal term only moves weight into f2
    const MatC z = build_observable(sp, ObservableKind::sum_sigma_z);
    const NormSplit nz = norm_split(build_h_spin(sp, kW, 1.0), b);
    EXPECT_NEAR(nz.f1, 2.0, 1e-12);
    EXPECT_NEAR(nz.f2, (0.5 * z).squaredNorm() / static_cast<double>(ns.n0), 1e-12);
  }
}

TEST(AnalyticLaws, Values) {
  EXPECT_NEAR(f1_analytic(kW, std::numbers::pi / 2.0), 2.0 * 4.0 / (std::numbers::pi * std::numbers::pi), 1e-14);
  EXPECT_NEAR(f1_analytic(kW, 0.0), 2.0, 1e-14);
  const auto wc = critical_frequencies(15.0, 4);
  ASSERT_EQ(wc.size(), 4u);
  EXPECT_DOUBLE_EQ(wc[0], 7.5);
  EXPECT_DOUBLE_EQ(wc[1], 3.75);
  EXPECT_DOUBLE_EQ(wc[3], 1.875);
  EXPECT_NEAR(scar_gap_prediction({kW, 15.0, 15.0}, 1.86), 1.86 * 2.0 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(scar_gap_prediction({kW, 15.0, 1e9}, 1.86), 1.86, 1e-9);
  // gamma = q pi is where f1 vanishes
  for (double om : wc) EXPECT_NEAR(f1_analytic(kW, DriveProtocol{kW, 15.0, om}.gamma()), 0.0, 1e-25);
}
