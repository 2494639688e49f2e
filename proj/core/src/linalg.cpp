#include "pxp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace pxp {
namespace {

void check_square(Eigen::Index rows, Eigen::Index cols, const char* who) {
  if (rows != cols) throw std::invalid_argument(std::string(who) + ": matrix is not square");
}

void check_info(lapack_int info, const char* routine) {
  if (info != 0) throw numerical_error(std::string(routine) + " failed, info = " + std::to_string(info));
}

bool imaginary_part_vanishes(const MatC& a) {
  return a.size() == 0 || a.imag().cwiseAbs().maxCoeff() == 0.0;
}

// Rotation angle of the Hermitian pencil. Any value away from multiples of
// pi/2 separates the +-theta partners that the chiral symmetry produces.
constexpr double kPencilAngle = 0.6180339887498949;
constexpr double kClusterGap = 1e-5;
constexpr double kPencilResidual = 1e-9;

UnitaryEigen schur_eig(const MatC& u) {
  const auto n = static_cast<lapack_int>(u.rows());
  MatC t = u;
  MatC vs(n, n);
  VecC w(n);
  lapack_int sdim = 0;
  if (n > 0) {
    lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, t.data(), n, &sdim, w.data(),
                                    vs.data(), n);
    check_info(info, "zgees");
  }
  UnitaryEigen out;
  out.phases.resize(n);
  out.moduli.resize(n);
  for (lapack_int i = 0; i < n; ++i) {
    out.phases(i) = principal_angle(-std::arg(w(i)));
    out.moduli(i) = std::abs(w(i));
  }
  out.vectors = std::move(vs);
  return out;
}

UnitaryEigen pencil_eig(const MatC& u) {
  const Eigen::Index n = u.rows();
  const cplx rot = std::polar(1.0, -kPencilAngle);
  MatC m = 0.5 * (rot * u + std::conj(rot) * u.adjoint());
  HermitianEigen he = eigh(m);
  MatC v = std::move(he.vectors);

  // Near-degenerate runs of cos(theta + angle) do not determine the
  // individual eigenvectors of u. Resolve each run inside its subspace.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && he.values(stop) - he.values(stop - 1) < kClusterGap) ++stop;
    const Eigen::Index len = stop - start;
    if (len > 1) {
      MatC block = v.middleCols(start, len);
      MatC small = block.adjoint() * u * block;
      UnitaryEigen inner = schur_eig(small);
      v.middleCols(start, len) = block * inner.vectors;
    }
    start = stop;
  }

  MatC uv = u * v;
  UnitaryEigen out;
  out.phases.resize(n);
  out.moduli.resize(n);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx lam = v.col(j).dot(uv.col(j));
    out.phases(j) = principal_angle(-std::arg(lam));
    out.moduli(j) = std::abs(lam);
    worst = std::max(worst, (uv.col(j) - lam * v.col(j)).norm());
  }
  if (worst > kPencilResidual) return schur_eig(u);
  out.vectors = std::move(v);
  return out;
}

}  // namespace

RealEigen eigh(const MatR& a) {
  check_square(a.rows(), a.cols(), "eigh");
  const auto n = static_cast<lapack_int>(a.rows());
  RealEigen out{VecR(n), a};
  if (n == 0) return out;
  check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n, out.values.data()), "dsyevd");
  return out;
}

HermitianEigen eigh(const MatC& a) {
  check_square(a.rows(), a.cols(), "eigh");
  const auto n = static_cast<lapack_int>(a.rows());
  HermitianEigen out{VecR(n), a};
  if (n == 0) return out;
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n, out.values.data()), "zheevd");
  return out;
}

VecR eigvalsh(const MatR& a) {
  check_square(a.rows(), a.cols(), "eigvalsh");
  const auto n = static_cast<lapack_int>(a.rows());
  MatR work = a;
  VecR w(n);
  if (n == 0) return w;
  check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, w.data()), "dsyevd");
  return w;
}

VecR eigvalsh(const MatC& a) {
  check_square(a.rows(), a.cols(), "eigvalsh");
  if (imaginary_part_vanishes(a)) return eigvalsh(MatR(a.real()));
  const auto n = static_cast<lapack_int>(a.rows());
  MatC work = a;
  VecR w(n);
  if (n == 0) return w;
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, w.data()), "zheevd");
  return w;
}

HermitianEigen eigh_auto(const MatC& a) {
  if (!imaginary_part_vanishes(a)) return eigh(a);
  RealEigen re = eigh(MatR(a.real()));
  return {std::move(re.values), re.vectors.cast<cplx>()};
}

const char* to_string(UnitaryMethod m) {
  switch (m) {
    case UnitaryMethod::schur:
      return "schur";
    case UnitaryMethod::hermitian_pencil:
      return "pencil";
  }
  return "unknown";
}

UnitaryMethod unitary_method_from_string(const std::string& s) {
  if (s == "schur") return UnitaryMethod::schur;
  if (s == "pencil") return UnitaryMethod::hermitian_pencil;
  throw std::invalid_argument("unknown unitary eigensolver '" + s + "' (expected schur or pencil)");
}

UnitaryEigen unitary_eig(const MatC& u, UnitaryMethod method) {
  check_square(u.rows(), u.cols(), "unitary_eig");
  if (u.rows() == 0) return {};
  return method == UnitaryMethod::schur ? schur_eig(u) : pencil_eig(u);
}

VecR unitary_phases(const MatC& u) {
  check_square(u.rows(), u.cols(), "unitary_phases");
  const auto n = static_cast<lapack_int>(u.rows());
  VecR out(n);
  if (n == 0) return out;
  MatC t = u;
  VecC w(n);
  lapack_int sdim = 0;
  check_info(LAPACKE_zgees(LAPACK_COL_MAJOR, 'N', 'N', nullptr, n, t.data(), n, &sdim, w.data(), nullptr, 1),
             "zgees");
  for (lapack_int i = 0; i < n; ++i) out(i) = principal_angle(-std::arg(w(i)));
  return out;
}

double principal_angle(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

double max_abs(const MatC& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermiticity_residual(const MatC& a) { return max_abs(a - a.adjoint()); }

double unitarity_residual(const MatC& u) {
  return max_abs(u.adjoint() * u - MatC::Identity(u.rows(), u.cols()));
}

}  // namespace pxp
