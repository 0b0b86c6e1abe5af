#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qtel {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat3r = Eigen::Matrix3d;
using Vec3r = Eigen::Vector3d;
using Vec4c = Eigen::Vector4cd;

/// Tolerance for structural checks (Hermiticity, orthogonality, unit trace).
inline constexpr double kStructuralTol = 1e-10;
/// Tolerance for reconstruction residuals of factored matrices.
inline constexpr double kResidualTol = 1e-9;

/// Pauli matrix sigma_k for k in {0,1,2,3}; sigma_0 is the identity.
const Mat2c& pauli(int k);

/// Kronecker product of two 2x2 matrices, row-major qubit ordering.
Mat4c kron22(const Mat2c& a, const Mat2c& b);

bool is_hermitian(const Mat2c& a, double tol = kStructuralTol);
bool is_hermitian(const Mat4c& a, double tol = kStructuralTol);
bool is_unitary(const Mat2c& a, double tol = kStructuralTol);
bool is_unitary(const Mat4c& a, double tol = kStructuralTol);
bool is_orthogonal(const Mat3r& a, double tol = kStructuralTol);
bool is_proper_rotation(const Mat3r& a, double tol = kStructuralTol);

struct Svd3 {
  Mat3r o1;
  Vec3r sigma;  // descending, nonnegative
  Mat3r o2;
};

/// Full SVD of a real 3x3 matrix: t = o1 * diag(sigma) * o2^T.
Svd3 svd3(const Mat3r& t);

struct RotationFactors {
  Mat3r r1;  // proper rotation
  Vec3r d;   // signed diagonal, |d_i| = sigma_i
  Mat3r r2;  // proper rotation
};

/// Absorbs reflections of an SVD pair into the diagonal so that both factors
/// are proper rotations: t = r1 * diag(d) * r2^T with det r1 = det r2 = +1.
RotationFactors make_proper(const Mat3r& o1, const Vec3r& sigma, const Mat3r& o2);

/// Lifts a proper rotation to a 2x2 unitary with U (n.sigma) U^dag = (R n).sigma.
/// The global phase is fixed by making the first nonzero entry real positive.
Mat2c so3_to_su2(const Mat3r& r);

/// Rotation realized by the adjoint action of a 2x2 unitary:
/// R_ij = Re Tr(sigma_i U sigma_j U^dag) / 2.
Mat3r rotation_from_unitary(const Mat2c& u);

/// Multiplies by a global phase so the first nonzero entry is real positive.
Mat2c fix_phase(const Mat2c& u);

/// Eigenvalues of a symmetric 3x3 matrix, descending.
Vec3r eig3_symmetric(const Mat3r& a);

}  // namespace qtel
