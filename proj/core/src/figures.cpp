#include "qtel/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qtel/errors.hpp"
#include "qtel/rng.hpp"
#include "qtel/simulator.hpp"

namespace qtel {

namespace {

double fef_from_diag(const CanonicalDiag& cd) {
  const Vec3r& s = cd.singular_values;
  if (cd.det_t > kDetTol) return 0.25 * (1.0 + s[0] + s[1] - s[2]);
  return 0.25 * (1.0 + s[0] + s[1] + s[2]);
}

// Deviation from the signed diagonal via Tr T^2 - (Tr T)^2 / 3, with the
// branch expression in the singular values as a consistency check. The trace
// form is evaluated as the centered sum sum_i (tau_i - mean)^2, which is the
// same quantity without cancellation for near-degenerate diagonals.
double deviation_from_diag(const CanonicalDiag& cd) {
  const Vec3r& tau = cd.diag;
  const double mean = tau.sum() / 3.0;
  const double centered = (tau.array() - mean).matrix().squaredNorm();
  const double trace_form = std::sqrt(centered / 30.0);

  const Vec3r& s = cd.singular_values;
  double branch_form;
  if (cd.det_t > kDetTol) {
    branch_form = std::sqrt((s[0] - s[1]) * (s[0] - s[1]) +
                            (s[0] + s[2]) * (s[0] + s[2]) +
                            (s[1] + s[2]) * (s[1] + s[2])) /
                  (3.0 * std::sqrt(10.0));
  } else {
    branch_form = std::sqrt((s[0] - s[1]) * (s[0] - s[1]) +
                            (s[0] - s[2]) * (s[0] - s[2]) +
                            (s[1] - s[2]) * (s[1] - s[2])) /
                  (3.0 * std::sqrt(10.0));
  }
  if (std::abs(trace_form - branch_form) > 1e-12) {
    std::ostringstream os;
    os << "fidelity deviation forms disagree: trace form " << trace_form
       << ", branch form " << branch_form;
    throw DerivationMismatch(os.str());
  }
  return trace_form;
}

// The four unit quaternion basis elements as 2x2 unitaries:
// {I, -i sigma_1, -i sigma_2, -i sigma_3}. Real combinations with unit
// coefficient norm are exactly the SU(2) matrices.
const Mat2c& su2_basis(int mu) {
  static const std::array<Mat2c, 4> basis = [] {
    std::array<Mat2c, 4> b;
    b[0] = pauli(0);
    for (int k = 1; k < 4; ++k) b[k] = cplx(0, -1) * pauli(k);
    return b;
  }();
  return basis[static_cast<std::size_t>(mu)];
}

Mat2c su2_from_coeffs(const Eigen::Vector4d& x) {
  Mat2c u = Mat2c::Zero();
  for (int mu = 0; mu < 4; ++mu) u += x[mu] * su2_basis(mu);
  return u;
}

// Exact maximization of <Psi0| (A @ B)^dag rho (A @ B) |Psi0> over one side
// while the other is held fixed. The objective is a real quadratic form in
// the four quaternion coefficients of the free unitary, so the optimum is
// the top eigenpair of a 4x4 symmetric matrix.
double best_side(const Mat4c& rho, Mat2c& free_side, const Mat2c& fixed,
                 bool first_slot) {
  std::array<Vec4c, 4> w;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4c op = first_slot ? kron22(su2_basis(mu), fixed)
                                : kron22(fixed, su2_basis(mu));
    w[mu] = op * bell_ket(0);
  }
  Eigen::Matrix4d q;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      q(mu, nu) = (w[mu].adjoint() * rho * w[nu])(0, 0).real();
  q = 0.5 * (q + q.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(q);
  free_side = su2_from_coeffs(es.eigenvectors().col(3));
  return es.eigenvalues()[3];
}

}  // namespace

double fef(const DensityMatrix& rho) {
  return fef_from_diag(canonical_diag(hs_decompose(rho).t));
}

double fef_oracle(const DensityMatrix& rho, int n_restarts, std::uint64_t seed) {
  if (n_restarts < 1) throw InvalidParameter("fef_oracle: n_restarts must be >= 1");
  const Mat4c& m = rho.matrix();
  Rng rng(seed);
  double best = 0.0;
  for (int restart = 0; restart < n_restarts; ++restart) {
    Mat2c u = haar_su2(rng);
    Mat2c v = haar_su2(rng);
    double value = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      best_side(m, u, v, /*first_slot=*/true);
      const double next = best_side(m, v, u, /*first_slot=*/false);
      if (std::abs(next - value) < 1e-15) {
        value = next;
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

double max_fidelity(const DensityMatrix& rho) { return (2.0 * fef(rho) + 1.0) / 3.0; }

double fidelity_deviation(const DensityMatrix& rho) {
  return deviation_from_diag(canonical_diag(hs_decompose(rho).t));
}

double mean_fidelity_diagonal(const Vec3r& t_diag) {
  return 0.5 * (1.0 - t_diag.sum() / 3.0);
}

double second_moment_diagonal(const Vec3r& t_diag) {
  const double tr = t_diag.sum();
  const double tr2 = t_diag.squaredNorm();
  return 0.25 * (1.0 - 2.0 * tr / 3.0 + (tr * tr + 2.0 * tr2) / 15.0);
}

TeleportationReport classify(const DensityMatrix& rho) {
  const CanonicalDiag cd = canonical_diag(hs_decompose(rho).t);
  TeleportationReport rep{};
  rep.fully_entangled_fraction = fef_from_diag(cd);
  rep.max_fidelity = (2.0 * rep.fully_entangled_fraction + 1.0) / 3.0;
  rep.fidelity_deviation = deviation_from_diag(cd);
  rep.det_t = cd.det_t;
  rep.singular_values = cd.singular_values;
  rep.useful = cd.singular_values.sum() > 1.0;
  rep.universal = rep.fidelity_deviation <= kUniversalTol;
  rep.branch = cd.det_t > kDetTol ? Branch::DetPositive : Branch::DetNonPositive;
  return rep;
}

DensityMatrix universal_state_for_fidelity(double f) {
  if (!(f > 2.0 / 3.0 && f <= 1.0))
    throw InvalidParameter("universal_state_for_fidelity: requires 2/3 < f <= 1");
  const double t = 2.0 * f - 1.0;
  return werner((3.0 * t + 1.0) / 4.0);
}

}  // namespace qtel
