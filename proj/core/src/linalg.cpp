#include "qtel/linalg.hpp"

#include <array>
#include <cmath>

#include "qtel/errors.hpp"

namespace qtel {

const Mat2c& pauli(int k) {
  static const std::array<Mat2c, 4> sigmas = [] {
    std::array<Mat2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return sigmas.at(static_cast<std::size_t>(k));
}

Mat4c kron22(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Mat2c& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Mat4c& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat2c& a, double tol) {
  return (a.adjoint() * a - Mat2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat4c& a, double tol) {
  return (a.adjoint() * a - Mat4c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_orthogonal(const Mat3r& a, double tol) {
  return (a.transpose() * a - Mat3r::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_proper_rotation(const Mat3r& a, double tol) {
  return is_orthogonal(a, tol) && std::abs(a.determinant() - 1.0) <= tol;
}

Svd3 svd3(const Mat3r& t) {
  if (!t.allFinite()) throw InvalidMatrix("svd3: input has non-finite entries");
  Eigen::JacobiSVD<Mat3r> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

RotationFactors make_proper(const Mat3r& o1, const Vec3r& sigma, const Mat3r& o2) {
  RotationFactors f{o1, sigma, o2};
  if (f.r1.determinant() < 0.0) {
    f.r1.col(2) *= -1.0;
    f.d[2] = -f.d[2];
  }
  if (f.r2.determinant() < 0.0) {
    f.r2.col(2) *= -1.0;
    f.d[2] = -f.d[2];
  }
  return f;
}

Mat2c fix_phase(const Mat2c& u) {
  cplx pivot = u(0, 0);
  if (std::abs(pivot) < 1e-12) pivot = u(1, 0);
  return u * (std::conj(pivot) / std::abs(pivot));
}

Mat2c so3_to_su2(const Mat3r& r) {
  if (!r.allFinite() || !is_proper_rotation(r, 1e-8))
    throw NotARotation("so3_to_su2: input is not a proper rotation");

  // Unit quaternion (w, x, y, z) with R the column-action rotation of q.
  double w, x, y, z;
  const double tr = r.trace();
  if (tr > 0.0) {
    const double s = std::sqrt(tr + 1.0) * 2.0;
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;

  // U = w I - i (x sigma_1 + y sigma_2 + z sigma_3)
  Mat2c u;
  u << cplx(w, -z), cplx(-y, -x), cplx(y, -x), cplx(w, z);
  return fix_phase(u);
}

Mat3r rotation_from_unitary(const Mat2c& u) {
  Mat3r r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = 0.5 * (pauli(i + 1) * u * pauli(j + 1) * u.adjoint()).trace().real();
  return r;
}

Vec3r eig3_symmetric(const Mat3r& a) {
  if (!a.allFinite() || (a - a.transpose()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw InvalidMatrix("eig3_symmetric: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3r> es(a);
  const Vec3r asc = es.eigenvalues();
  return {asc[2], asc[1], asc[0]};
}

}  // namespace qtel
