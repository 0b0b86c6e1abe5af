#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qtel/canonical.hpp"
#include "qtel/errors.hpp"
#include "qtel/figures.hpp"
#include "qtel/simulator.hpp"
#include "qtel/state.hpp"

using namespace qtel;

TEST_CASE("bell basis: orthonormal, complete, rank one") {
  const BellBasis& bb = bell_basis();
  Mat4c sum = Mat4c::Zero();
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const cplx overlap = bb.kets[k].dot(bb.kets[l]);
      CHECK(std::abs(overlap - (k == l ? 1.0 : 0.0)) <= 1e-14);
    }
    sum += bb.projectors[k];
    CHECK((bb.projectors[k] * bb.projectors[k] - bb.projectors[k])
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
  }
  CHECK((sum - Mat4c::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("bell basis correlation matrices") {
  const BellBasis& bb = bell_basis();
  Mat3r t_sum = Mat3r::Zero();
  for (int k = 0; k < 4; ++k) {
    const DensityMatrix proj(bb.projectors[k]);
    CHECK((hs_decompose(proj).t - bb.t_matrices[k]).cwiseAbs().maxCoeff() <= 1e-14);
    t_sum += bb.t_matrices[k];
  }
  CHECK(t_sum.cwiseAbs().maxCoeff() == 0.0);  // sum_k T_k = 0 exactly
}

TEST_CASE("pauli corrections rotate by minus the outcome correlation matrix") {
  // The adjoint action of sigma_k equals -T_k under the fixed convention
  // U (n.sigma) U^dag = (R n).sigma.
  const BellBasis& bb = bell_basis();
  for (int k = 0; k < 4; ++k) {
    const Mat3r r = rotation_from_unitary(bb.corrections[k]);
    CHECK((r + bb.t_matrices[k]).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("teleportation through the singlet is perfect") {
  const DensityMatrix s = singlet();
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const Vec3r a = sample_bloch_uniform(rng);
    CHECK(teleport_fidelity_exact(s, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("isotropic resources teleport every input equally") {
  // T = -t I gives f = (1 + t)/2 for every input direction.
  const DensityMatrix w = werner(0.85);
  const double t = (4.0 * 0.85 - 1.0) / 3.0;
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const Vec3r a = sample_bloch_uniform(rng);
    CHECK(teleport_fidelity_exact(w, a) ==
          doctest::Approx(0.5 * (1.0 + t)).epsilon(1e-12));
  }
}

TEST_CASE("pure-state canonical resource along z") {
  const CanonicalForm cf =
      canonicalize(pure_schmidt(std::sqrt(0.9), std::sqrt(0.1)));
  // canonical diagonal (-1, -0.6, -0.6); input along z sees t_33 = -0.6
  const double f = teleport_fidelity_exact(cf.varrho, Vec3r(0, 0, 1));
  CHECK(f == doctest::Approx(0.5 * (1.0 + 0.6)).epsilon(1e-9));
}

TEST_CASE("teleport_fidelity_exact input validation") {
  CHECK_THROWS_AS(teleport_fidelity_exact(singlet(), Vec3r(0, 0, 0.5)),
                  InvalidParameter);
  // generic random states have non-diagonal T
  CHECK_THROWS_AS(teleport_fidelity_exact(random_density_matrix(5), Vec3r(0, 0, 1)),
                  NotCanonical);
}

TEST_CASE("protocol value equals the closed form on random canonical states") {
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    const CanonicalForm cf = canonicalize(random_density_matrix(rng));
    const Mat3r t = hs_decompose(cf.varrho).t;
    for (int j = 0; j < 20; ++j) {
      const Vec3r a = sample_bloch_uniform(rng);
      const double f = teleport_fidelity_exact(cf.varrho, a);
      CHECK(std::abs(f - 0.5 * (1.0 - a.dot(t * a))) <= 1e-10);
    }
  }
}

TEST_CASE("the local-vector cross term vanishes pointwise") {
  // sum_k a^T T_k (r - s) = a^T (sum_k T_k) (r - s) = 0, exactly: the T_k
  // components cancel in pairs.
  const BellBasis& bb = bell_basis();
  Rng rng(150);
  for (int i = 0; i < 50; ++i) {
    const CanonicalForm cf = canonicalize(random_density_matrix(rng));
    const BlochDecomposition b = hs_decompose(cf.varrho);
    const Vec3r x = b.r - b.s;
    const Vec3r a = sample_bloch_uniform(rng);
    Mat3r t_sum = Mat3r::Zero();
    double cross = 0.0;
    for (int k = 0; k < 4; ++k) {
      t_sum += bb.t_matrices[k];
      cross += a.dot(bb.t_matrices[k] * x);
    }
    CHECK(a.dot(t_sum * x) == 0.0);  // summed matrices cancel exactly
    CHECK(std::abs(cross) <= 1e-15);  // term-by-term only rounds
  }
}

TEST_CASE("bloch sampling is uniform") {
  Rng rng(202);
  const int n = 1000000;
  Vec3r mean = Vec3r::Zero();
  Mat3r second = Mat3r::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec3r a = sample_bloch_uniform(rng);
    CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
    mean += a;
    second += a * a.transpose();
  }
  mean /= n;
  second /= n;
  // each coordinate: variance 1/3 so stderr = 1/sqrt(3n)
  const double se_mean = 1.0 / std::sqrt(3.0 * n);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i]) <= 4.0 * se_mean);
  // <a_i a_j> = delta_ij / 3; entry variances are below 1/5
  const double se_second = std::sqrt(0.2 / n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(second(i, j) - (i == j ? 1.0 / 3.0 : 0.0)) <=
            4.0 * se_second);
}

TEST_CASE("moment accumulator matches two-pass moments and merges") {
  Rng rng(404);
  std::vector<double> xs(5000);
  MomentAccumulator one;
  MomentAccumulator left, right;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = rng.uniform() * rng.uniform();
    one.add(xs[i]);
    (i < xs.size() / 2 ? left : right).add(xs[i]);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    m2 += (x - mean) * (x - mean);
    m4 += std::pow(x - mean, 4);
  }
  m2 /= static_cast<double>(xs.size());
  m4 /= static_cast<double>(xs.size());
  CHECK(one.mean() == doctest::Approx(mean).epsilon(1e-12));
  CHECK(one.variance_population() == doctest::Approx(m2).epsilon(1e-10));
  CHECK(one.fourth_central_moment() == doctest::Approx(m4).epsilon(1e-9));

  left.merge(right);
  CHECK(left.count() == one.count());
  CHECK(left.mean() == doctest::Approx(one.mean()).epsilon(1e-12));
  CHECK(left.variance_population() ==
        doctest::Approx(one.variance_population()).epsilon(1e-12));
  CHECK(left.fourth_central_moment() ==
        doctest::Approx(one.fourth_central_moment()).epsilon(1e-10));
}

TEST_CASE("monte carlo statistics match the closed forms") {
  const int n = 100000;

  const CanonicalForm w = canonicalize(werner(0.9));
  const SimulationStats ws = monte_carlo_stats(w.varrho, n, 123);
  CHECK(std::abs(ws.mean_fidelity - max_fidelity(werner(0.9))) <=
        4.0 * ws.stderr_mean + 1e-12);
  CHECK(ws.std_fidelity <= 5e-4);

  const DensityMatrix pure = pure_schmidt(std::sqrt(0.9), std::sqrt(0.1));
  const CanonicalForm p = canonicalize(pure);
  const SimulationStats ps = monte_carlo_stats(p.varrho, n, 456);
  CHECK(std::abs(ps.mean_fidelity - max_fidelity(pure)) <=
        4.0 * ps.stderr_mean + 1e-12);
  CHECK(std::abs(ps.std_fidelity - fidelity_deviation(pure)) <=
        4.0 * ps.stderr_std + 1e-12);
}

TEST_CASE("monte carlo contract at degenerate n") {
  const SimulationStats tiny = monte_carlo_stats(singlet(), 2, 9);
  CHECK(tiny.n_samples == 2);
  CHECK(tiny.mean_fidelity == doctest::Approx(1.0));
  CHECK_THROWS_AS(monte_carlo_stats(singlet(), 1, 9), InvalidParameter);
}

TEST_CASE("monte carlo runs are deterministic per seed") {
  const CanonicalForm cf = canonicalize(random_density_matrix(77));
  const SimulationStats a = monte_carlo_stats(cf.varrho, 5000, 42);
  const SimulationStats b = monte_carlo_stats(cf.varrho, 5000, 42);
  CHECK(a.mean_fidelity == b.mean_fidelity);
  CHECK(a.std_fidelity == b.std_fidelity);
  const SimulationStats c = monte_carlo_stats(cf.varrho, 5000, 43);
  CHECK(a.mean_fidelity != c.mean_fidelity);
}

TEST_CASE("schur integrals: identity is exact") {
  const SchurCheck check = verify_schur_integrals(Mat3r::Identity(), 10000, 3);
  CHECK(std::abs(check.quadratic_estimate - 1.0) <= 1e-12);
  CHECK(check.quadratic_expected == doctest::Approx(1.0));
  CHECK(std::abs(check.quartic_estimate - 1.0) <= 1e-12);
  CHECK(check.quartic_expected == doctest::Approx(1.0));
  CHECK(std::abs(check.quadratic_z) <= 4.0);
  CHECK(std::abs(check.quartic_z) <= 4.0);
}

TEST_CASE("schur integrals: traceless diagonal example") {
  const Mat3r t = Vec3r(1, -1, 0).asDiagonal();
  const SchurCheck check = verify_schur_integrals(t, 1000000, 8);
  CHECK(check.quadratic_expected == doctest::Approx(0.0));
  CHECK(check.quartic_expected == doctest::Approx(4.0 / 15.0));
  CHECK(std::abs(check.quadratic_z) <= 4.0);
  CHECK(std::abs(check.quartic_z) <= 4.0);
  CHECK_THROWS_AS(verify_schur_integrals(t, 100, 8), InvalidParameter);
}

TEST_CASE("schur integrals hold for a random non-symmetric matrix") {
  Rng rng(606);
  Mat3r t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = 2.0 * rng.uniform() - 1.0;
  const SchurCheck check = verify_schur_integrals(t, 200000, 11);
  CHECK(std::abs(check.quadratic_z) <= 4.0);
  CHECK(std::abs(check.quartic_z) <= 4.0);
}

TEST_CASE("haar unitaries: unitarity and first two moments") {
  Rng rng(707);
  const int n = 100000;
  cplx mean(0, 0);
  double mean_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Mat2c u = haar_su2(rng);
    if (i < 100) CHECK(is_unitary(u, 1e-12));
    mean += u(0, 0);
    mean_sq += std::norm(u(0, 0));
  }
  mean /= static_cast<double>(n);
  mean_sq /= static_cast<double>(n);
  // |U00|^2 is uniform on [0,1]: Re/Im of U00 have variance 1/4,
  // |U00|^2 has variance 1/12
  const double se_entry = std::sqrt(0.25 / n);
  CHECK(std::abs(mean.real()) <= 4.0 * se_entry);
  CHECK(std::abs(mean.imag()) <= 4.0 * se_entry);
  CHECK(std::abs(mean_sq - 0.5) <= 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("twirl leaves the singlet and the maximally mixed state fixed") {
  const DensityMatrix s = singlet();
  const DensityMatrix ts = bilateral_twirl(s, 25, 5);
  CHECK((ts.matrix() - s.matrix()).cwiseAbs().maxCoeff() <= 1e-10);

  const DensityMatrix m = maximally_mixed();
  const DensityMatrix tm = bilateral_twirl(m, 3, 5);
  CHECK((tm.matrix() - m.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(bilateral_twirl(s, 0, 5), InvalidParameter);
}

TEST_CASE("twirl drives random states toward isotropy") {
  // Raw input: singular values equalize regardless of the trace sign.
  const DensityMatrix rho = random_density_matrix(99);
  const TeleportationReport raw = classify(bilateral_twirl(rho, 10000, 17));
  CHECK(raw.singular_values[0] - raw.singular_values[2] <= 5e-2);

  // Canonical input (the resource the optimal protocol uses) has a
  // non-positive correlation trace, so the twirled state is Werner-like
  // with vanishing deviation.
  const CanonicalForm cf = canonicalize(rho);
  const TeleportationReport rep = classify(bilateral_twirl(cf.varrho, 10000, 17));
  CHECK(rep.singular_values[0] - rep.singular_values[2] <= 5e-2);
  CHECK(rep.fidelity_deviation <= 5e-2);
}

TEST_CASE("twirl preserves the singlet overlap") {
  const DensityMatrix rho = bell_diagonal(0.7, 0.3, 0.0, 0.0);
  const DensityMatrix out = bilateral_twirl(rho, 10000, 23);
  const double before = (bell_ket(0).adjoint() * rho.matrix() * bell_ket(0))(0, 0).real();
  const double after = (bell_ket(0).adjoint() * out.matrix() * bell_ket(0))(0, 0).real();
  CHECK(std::abs(before - after) <= 1e-12);  // exact invariance, per sample
  CHECK(std::abs(fef(out) - before) <= 5e-3);
}
