#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pxp {

using cplx = std::complex<double>;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;

/// Raised when a LAPACK routine fails or a numerical precondition is violated.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RealEigen {
  VecR values;  // ascending
  MatR vectors;
};

struct HermitianEigen {
  VecR values;  // ascending
  MatC vectors;
};

// Divide-and-conquer drivers (dsyevd / zheevd).
RealEigen eigh(const MatR& a);
HermitianEigen eigh(const MatC& a);
VecR eigvalsh(const MatR& a);
VecR eigvalsh(const MatC& a);

/// Hermitian eigendecomposition that drops to the real driver when the
/// imaginary part vanishes identically.
HermitianEigen eigh_auto(const MatC& a);

enum class UnitaryMethod {
  schur,             // complex Schur form (zgees)
  hermitian_pencil,  // rotated Hermitian part + per-cluster Schur refinement
};

const char* to_string(UnitaryMethod m);
UnitaryMethod unitary_method_from_string(const std::string& s);

/**
 * Eigendecomposition of a unitary matrix, U v_n = exp(-i theta_n) v_n.
 *
 * Phases are returned on (-pi, pi], unsorted, in the order produced by the
 * chosen driver. Eigenvectors are orthonormal.
 */
struct UnitaryEigen {
  VecR phases;
  VecR moduli;  // |eigenvalue|, equal to 1 up to rounding for unitary input
  MatC vectors;
};

UnitaryEigen unitary_eig(const MatC& u, UnitaryMethod method = UnitaryMethod::hermitian_pencil);

/// Eigenphases only. Uses a Schur factorization without vectors.
VecR unitary_phases(const MatC& u);

/// Maps an angle onto (-pi, pi].
double principal_angle(double theta);

double max_abs(const MatC& a);
double hermiticity_residual(const MatC& a);
double unitarity_residual(const MatC& u);

}  // namespace pxp
