#include "qtel/canonical.hpp"

#include <array>
#include <cmath>

#include "qtel/errors.hpp"

namespace qtel {

namespace {

// Sign pattern (all entries +-1) for singular values sigma under the
// canonical rules: all -1 for det <= 0, one +1 on the smallest singular
// value for det > 0. Ties resolve to the last index of the descending order.
std::array<int, 3> target_signs(double det_t) {
  if (det_t > kDetTol) return {-1, -1, +1};
  return {-1, -1, -1};
}

// Diagonal +-1 matrix with an even number of -1 entries (identity or a pi
// rotation about a coordinate axis).
Mat3r sign_rotation(const std::array<int, 3>& eta) {
  Mat3r e = Mat3r::Identity();
  for (int i = 0; i < 3; ++i) e(i, i) = eta[i];
  return e;
}

// Entrywise flips eta with product +1 taking the signs of d into the target
// pattern on entries with sigma above tolerance. Entries with negligible
// sigma are slack. Returns false only if the pattern is unreachable, which
// happens when the thresholded det branch disagrees with the true sign of
// the product of the d entries.
bool solve_flips(const Vec3r& d, const Vec3r& sigma, const std::array<int, 3>& lambda,
                 std::array<int, 3>& eta) {
  int product = 1;
  int slack = -1;
  for (int i = 0; i < 3; ++i) {
    if (sigma[i] > kSingularTol) {
      eta[i] = lambda[i] * (d[i] < 0.0 ? -1 : +1);
      product *= eta[i];
    } else {
      eta[i] = +1;
      slack = i;
    }
  }
  if (product == 1) return true;
  if (slack >= 0) {
    eta[slack] = -1;
    return true;
  }
  return false;
}

}  // namespace

CanonicalDiag canonical_diag(const Mat3r& t) {
  const Svd3 f = svd3(t);
  const double det_t = t.determinant();
  const std::array<int, 3> lambda = target_signs(det_t);
  Vec3r diag;
  for (int i = 0; i < 3; ++i) diag[i] = lambda[i] * f.sigma[i];
  return {diag, f.sigma, det_t};
}

CanonicalForm canonicalize(const DensityMatrix& rho) {
  const BlochDecomposition b = hs_decompose(rho);
  const double det_t = b.t.determinant();

  // Fast path: T already diagonal, magnitude-sorted, in the canonical
  // sign pattern. The identity transformation is then exact.
  {
    double offdiag = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(b.t(i, j)));
    const Vec3r d = b.t.diagonal();
    const Vec3r mags = d.cwiseAbs();
    const std::array<int, 3> lambda = target_signs(det_t);
    bool canonical = offdiag <= 1e-15 && mags[0] >= mags[1] && mags[1] >= mags[2];
    for (int i = 0; canonical && i < 3; ++i)
      if (mags[i] > kSingularTol && lambda[i] * d[i] < 0.0) canonical = false;
    if (canonical)
      return CanonicalForm{rho,   rho,   Mat2c::Identity(), Mat2c::Identity(),
                           d,     det_t, mags};
  }

  const Svd3 f = svd3(b.t);
  const RotationFactors pf = make_proper(f.o1, f.sigma, f.o2);

  std::array<int, 3> lambda = target_signs(det_t);
  std::array<int, 3> eta{};
  if (!solve_flips(pf.d, f.sigma, lambda, eta)) {
    // |det T| at the branch threshold with no vanishing singular value: the
    // reachable pattern is fixed by the true sign of the product of the d
    // entries, so switch the branch of the sign rule.
    lambda[2] = -lambda[2];
    solve_flips(pf.d, f.sigma, lambda, eta);
  }

  const Mat3r rot1 = sign_rotation(eta) * pf.r1.transpose();
  const Mat3r rot2 = pf.r2.transpose();

  const Mat2c u1 = so3_to_su2(rot1);
  const Mat2c u2 = so3_to_su2(rot2);
  const Mat4c uu = kron22(u1, u2);

  CanonicalForm cf{rho,
                   DensityMatrix(uu * rho.matrix() * uu.adjoint()),
                   u1,
                   u2,
                   Vec3r(eta[0] * pf.d[0], eta[1] * pf.d[1], eta[2] * pf.d[2]),
                   det_t,
                   f.sigma};
  return cf;
}

CanonicalCheck verify_canonical(const CanonicalForm& cf) {
  CanonicalCheck check{};

  const Mat4c uu = kron22(cf.u1, cf.u2);
  const Mat4c transformed = uu * cf.source.matrix() * uu.adjoint();
  check.conjugation_residual =
      (transformed - cf.varrho.matrix()).cwiseAbs().maxCoeff();

  const BlochDecomposition b = hs_decompose(cf.varrho);
  check.max_offdiagonal = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        check.max_offdiagonal = std::max(check.max_offdiagonal, std::abs(b.t(i, j)));
  check.diag_mismatch = (b.t.diagonal() - cf.diag).cwiseAbs().maxCoeff();

  // Conformity of the realized signs with the canonical rules, judged on
  // entries whose singular value is above tolerance. The det = 0 boundary
  // admits either branch.
  const double sig_tol = 1e-9;
  int plus_count = 0;
  int last_nonzero = -1;
  bool finite_ok = true;
  for (int i = 0; i < 3; ++i) {
    if (cf.singular_values[i] <= sig_tol) continue;
    last_nonzero = i;
    if (cf.diag[i] > 0.0) ++plus_count;
    if (std::abs(std::abs(cf.diag[i]) - cf.singular_values[i]) > sig_tol)
      finite_ok = false;
  }
  const bool all_minus = (plus_count == 0);
  const bool rule_b =
      (plus_count == 1 && last_nonzero >= 0 && cf.diag[last_nonzero] > 0.0);
  if (cf.det_t < -kDetTol)
    check.sign_pattern_ok = finite_ok && all_minus;
  else if (cf.det_t > kDetTol)
    check.sign_pattern_ok = finite_ok && rule_b;
  else
    check.sign_pattern_ok = finite_ok && (all_minus || rule_b);
  return check;
}

}  // namespace qtel
