#include "qtel/simulator.hpp"

#include <cmath>
#include <sstream>

#include "qtel/errors.hpp"

namespace qtel {

const BellBasis& bell_basis() {
  static const BellBasis basis = [] {
    BellBasis b;
    for (int k = 0; k < 4; ++k) {
      b.kets[k] = bell_ket(k);
      b.projectors[k] = b.kets[k] * b.kets[k].adjoint();
      b.corrections[k] = pauli(k);
    }
    b.t_matrices[0] = Vec3r(-1, -1, -1).asDiagonal();
    b.t_matrices[1] = Vec3r(-1, 1, 1).asDiagonal();
    b.t_matrices[2] = Vec3r(1, -1, 1).asDiagonal();
    b.t_matrices[3] = Vec3r(1, 1, -1).asDiagonal();
    return b;
  }();
  return basis;
}

void MomentAccumulator::add(double x) {
  const std::int64_t n1 = n_;
  n_ += 1;
  const double delta = x - mean_;
  const double delta_n = delta / n_;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (static_cast<double>(n_) * n_ - 3.0 * n_ + 3.0) +
         6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n_ - 2) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double d2 = delta * delta;

  const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + d2 * delta * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 =
      m4_ + other.m4_ +
      d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
      6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
      4.0 * delta * (na * other.m3_ - nb * m3_) / n;

  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += other.n_;
}

double teleport_fidelity_exact(const DensityMatrix& varrho, const Vec3r& a) {
  if (std::abs(a.norm() - 1.0) > 1e-12)
    throw InvalidParameter("teleport_fidelity_exact: Bloch vector must be unit");

  const BlochDecomposition b = hs_decompose(varrho);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(b.t(i, j)) > 1e-9)
        throw NotCanonical(
            "teleport_fidelity_exact: correlation matrix must be diagonal");

  // |psi><psi| = (I + a.sigma)/2
  Mat2c psi;
  psi << cplx(0.5 * (1.0 + a[2]), 0.0), cplx(0.5 * a[0], -0.5 * a[1]),
      cplx(0.5 * a[0], 0.5 * a[1]), cplx(0.5 * (1.0 - a[2]), 0.0);

  const BellBasis& bb = bell_basis();
  const Mat4c& rho = varrho.matrix();

  double fidelity = 0.0;
  double prob_sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec4c& ket = bb.kets[k];
    // Unnormalized Bob state for outcome k:
    //   out(b,b') = sum conj(ket[2i+a1]) psi(i,i') rho(2a1+b, 2a1'+b') ket[2i'+a1']
    // Bell kets have two nonzero entries, so only those terms are visited.
    int idx[2];
    int found = 0;
    for (int n = 0; n < 4; ++n)
      if (ket[n] != cplx(0.0, 0.0)) idx[found++] = n;
    Mat2c out = Mat2c::Zero();
    for (int n1 = 0; n1 < 2; ++n1) {
      for (int n2 = 0; n2 < 2; ++n2) {
        const int i = idx[n1] >> 1, a1 = idx[n1] & 1;
        const int i2 = idx[n2] >> 1, a2 = idx[n2] & 1;
        const cplx coeff = std::conj(ket[idx[n1]]) * ket[idx[n2]] * psi(i, i2);
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b2 = 0; b2 < 2; ++b2)
            out(b1, b2) += coeff * rho(2 * a1 + b1, 2 * a2 + b2);
      }
    }
    prob_sum += out.trace().real();
    const Mat2c corrected = bb.corrections[k] * out * bb.corrections[k];
    fidelity += (corrected * psi).trace().real();
  }

  if (std::abs(prob_sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "teleport_fidelity_exact: outcome probabilities sum to " << prob_sum;
    throw DerivationMismatch(os.str());
  }

  const double closed = 0.5 * (1.0 - a.dot(b.t * a));
  if (std::abs(fidelity - closed) > 1e-10) {
    std::ostringstream os;
    os << "teleport_fidelity_exact: protocol value " << fidelity
       << " disagrees with closed form " << closed;
    throw DerivationMismatch(os.str());
  }
  return fidelity;
}

Vec3r sample_bloch_uniform(Rng& rng) {
  while (true) {
    const Vec3r v(rng.normal(), rng.normal(), rng.normal());
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

SimulationStats monte_carlo_stats(const DensityMatrix& varrho, std::int64_t n,
                                  std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("monte_carlo_stats: n must be >= 2");
  Rng rng(seed);
  MomentAccumulator acc;
  for (std::int64_t i = 0; i < n; ++i)
    acc.add(teleport_fidelity_exact(varrho, sample_bloch_uniform(rng)));

  SimulationStats stats{};
  stats.n_samples = acc.count();
  stats.seed = seed;
  stats.mean_fidelity = acc.mean();
  stats.std_fidelity = std::sqrt(acc.variance_population());
  stats.stderr_mean = std::sqrt(acc.variance_sample() / n);
  const double var = acc.variance_population();
  const double m4 = acc.fourth_central_moment();
  const double var_of_var = std::max(0.0, m4 - var * var) / n;
  stats.stderr_std =
      stats.std_fidelity > 1e-15 ? std::sqrt(var_of_var) / (2.0 * stats.std_fidelity)
                                 : 0.0;
  return stats;
}

SchurCheck verify_schur_integrals(const Mat3r& t, std::int64_t n, std::uint64_t seed) {
  if (n < 1000) throw InvalidParameter("verify_schur_integrals: n must be >= 1000");
  Rng rng(seed);
  MomentAccumulator quad, quartic;
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec3r a = sample_bloch_uniform(rng);
    const double q = a.dot(t * a);
    quad.add(q);
    quartic.add(q * q);
  }

  SchurCheck check{};
  check.n_samples = n;
  check.quadratic_estimate = quad.mean();
  check.quadratic_expected = t.trace() / 3.0;
  check.quadratic_stderr = std::sqrt(quad.variance_sample() / n);
  check.quartic_estimate = quartic.mean();
  const double tr = t.trace();
  check.quartic_expected =
      (tr * tr + (t * t.transpose()).trace() + (t * t).trace()) / 15.0;
  check.quartic_stderr = std::sqrt(quartic.variance_sample() / n);

  auto z_score = [](double estimate, double expected, double stderr_value) {
    const double diff = estimate - expected;
    if (stderr_value < 1e-15) return std::abs(diff) <= 1e-12 ? 0.0 : diff / 1e-15;
    return diff / stderr_value;
  };
  check.quadratic_z = z_score(check.quadratic_estimate, check.quadratic_expected,
                              check.quadratic_stderr);
  check.quartic_z =
      z_score(check.quartic_estimate, check.quartic_expected, check.quartic_stderr);
  return check;
}

Mat2c haar_su2(Rng& rng) {
  while (true) {
    Eigen::Vector2cd g1(cplx(rng.normal(), rng.normal()),
                        cplx(rng.normal(), rng.normal()));
    Eigen::Vector2cd g2(cplx(rng.normal(), rng.normal()),
                        cplx(rng.normal(), rng.normal()));
    const double n1 = g1.norm();
    if (n1 < 1e-12) continue;
    const Eigen::Vector2cd q1 = g1 / n1;
    const Eigen::Vector2cd res = g2 - q1 * q1.dot(g2);
    const double n2 = res.norm();
    if (n2 < 1e-12) continue;
    Mat2c u;
    u.col(0) = q1;
    u.col(1) = res / n2;
    return u;
  }
}

DensityMatrix bilateral_twirl(const DensityMatrix& rho, int n, std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("bilateral_twirl: n must be >= 1");
  Rng rng(seed);
  Mat4c acc = Mat4c::Zero();
  for (int i = 0; i < n; ++i) {
    const Mat2c u = haar_su2(rng);
    const Mat4c uu = kron22(u, u);
    acc += uu * rho.matrix() * uu.adjoint();
  }
  acc /= static_cast<double>(n);
  return DensityMatrix(acc);
}

}  // namespace qtel
