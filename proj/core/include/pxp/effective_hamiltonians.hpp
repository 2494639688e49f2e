#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/linalg.hpp"
#include "pxp/spin_operators.hpp"

namespace pxp {

/// Coefficient of sum sigma~x in the second-order renormalized PXP term.
double magnus_c1(double gamma);
/// Coefficient of sum sigma~y, including the third-order correction.
double magnus_c2(double gamma, double delta);

/**
 * High-frequency expansion of the square-pulse Floquet Hamiltonian.
 *
 * With X, Y the sums of constrained sigma~x and sigma~y:
 *   order[0] = -w X
 *   order[1] = -w gamma Y
 *   order[2] = (2 w / 3) gamma^2 X
 *   order[3] = (w gamma^3 / 3) Y - (lambda delta^3 / 3) [X, [X, Y]]
 * regrouped as H0 = -w (C1 X + C2 Y) plus the remainder H1.
 */
struct MagnusTerms {
  std::array<MatC, 4> order;
  MatC H0;
  MatC H1;
  double C1 = 1.0;
  double C2 = 0.0;
};

MagnusTerms magnus_terms(const Space& space, const DriveProtocol& protocol, int max_order = 3);

/// -w (sin g / g) sum_j (cos g sigma~x_j + sin g sigma~y_j), g = gamma.
MatC fpt_closed_form(const Space& space, const DriveProtocol& protocol);

/// sin(x)/x with the analytic limit at 0.
double sinc(double x);

/// Rational coefficient num/den of gamma^power.
struct SeriesTerm {
  int power;
  std::int64_t numerator;
  std::int64_t denominator;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/**
 * Large-lambda resummation of the PXP coefficients of the expansion. Both
 * channels multiply -w; the series converge to sin g cos g / g and sin^2 g / g.
 */
struct ResummedPXP {
  std::vector<SeriesTerm> x_channel;
  std::vector<SeriesTerm> y_channel;

  double x_coefficient(double gamma) const;
  double y_coefficient(double gamma) const;
};

/// Tabulated series through gamma^10 in the sigma~x channel and gamma^11 in the sigma~y channel.
const ResummedPXP& resummed_pxp_series();

/// Closed forms the resummed series approach.
double resummed_x_closed_form(double gamma);
double resummed_y_closed_form(double gamma);

struct NormSplit {
  double f1 = 0.0;
  double f2 = 0.0;
  std::uint64_t n0 = 0;
};

/**
 * Mean squared matrix elements of H_F in the sigma^z basis: f1 over the N0
 * ordered pairs connected by a constrained spin flip, f2 over every other
 * ordered pair including the diagonal. Both sums are divided by N0.
 */
NormSplit norm_split(const MatC& h_floquet, const ConstrainedBasis& basis);

/// w^2 sin^2(gamma) / gamma^2
double f1_analytic(double w, double gamma);

/// lambda / (2 q) for q = 1..q_max
std::vector<double> critical_frequencies(double lambda, int q_max);

/// w_inf sin(gamma) / gamma
double scar_gap_prediction(const DriveProtocol& protocol, double w_inf);

}  // namespace pxp
