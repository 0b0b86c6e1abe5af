#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtel/canonical.hpp"
#include "qtel/errors.hpp"
#include "qtel/figures.hpp"
#include "qtel/state.hpp"

using namespace qtel;

namespace {

double direct_singlet_overlap(const DensityMatrix& rho) {
  return (bell_ket(0).adjoint() * rho.matrix() * bell_ket(0))(0, 0).real();
}

}  // namespace

TEST_CASE("fully entangled fraction on reference states") {
  CHECK(fef(singlet()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fef(maximally_mixed()) == doctest::Approx(0.25).epsilon(1e-12));

  const DensityMatrix w = werner(0.75);
  CHECK(fef(w) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(fef(w) == doctest::Approx(direct_singlet_overlap(w)).epsilon(1e-12));
}

TEST_CASE("maximal fidelity on reference states") {
  const double ab = std::sqrt(0.9) * std::sqrt(0.1);  // 0.3
  CHECK(max_fidelity(pure_schmidt(std::sqrt(0.9), std::sqrt(0.1))) ==
        doctest::Approx(2.0 / 3.0 * (1.0 + ab)).epsilon(1e-12));
  CHECK(max_fidelity(werner(0.9)) ==
        doctest::Approx(2.0 / 3.0 * (0.5 + 0.9)).epsilon(1e-12));
  CHECK(max_fidelity(maximally_mixed()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_fidelity(werner(0.5)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(max_fidelity(pure_schmidt(1.0, 0.0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("fidelity deviation on reference states") {
  const double pure_expected = (1.0 - 0.6) / (3.0 * std::sqrt(5.0));
  CHECK(fidelity_deviation(pure_schmidt(std::sqrt(0.9), std::sqrt(0.1))) ==
        doctest::Approx(pure_expected).epsilon(1e-12));

  // Zero deviation holds wherever the Werner correlation diagonal is
  // non-positive (p0 >= 1/4, det T <= 0).
  for (double p0 : {0.25, 0.3, 0.5, 0.75, 0.99, 1.0})
    CHECK(fidelity_deviation(werner(p0)) <= 1e-12);
  // Below p0 = 1/4 the diagonal is +t I with det T > 0, and the canonical
  // sign pattern forces a genuine spread of 2 sqrt2 t / (3 sqrt10).
  const double t_small = (1.0 - 4.0 * 0.1) / 3.0;
  CHECK(fidelity_deviation(werner(0.1)) ==
        doctest::Approx(2.0 * std::sqrt(2.0) * t_small / (3.0 * std::sqrt(10.0)))
            .epsilon(1e-12));

  const double bd_expected =
      2.0 / (3.0 * std::sqrt(10.0)) * std::sqrt(0.01 + 0.01 + 0.04);
  CHECK(fidelity_deviation(bell_diagonal(0.7, 0.2, 0.1, 0.0)) ==
        doctest::Approx(bd_expected).epsilon(1e-12));

  // rank-2 Bell diagonal: Delta = 2 p1 / (3 sqrt 5)
  CHECK(fidelity_deviation(bell_diagonal(0.7, 0.3, 0.0, 0.0)) ==
        doctest::Approx(2.0 * 0.3 / (3.0 * std::sqrt(5.0))).epsilon(1e-12));
}

TEST_CASE("diagonal fidelity moments") {
  CHECK(mean_fidelity_diagonal(Vec3r(-1, -1, -1)) == doctest::Approx(1.0));
  CHECK(mean_fidelity_diagonal(Vec3r(0, 0, 0)) == doctest::Approx(0.5));
  CHECK(mean_fidelity_diagonal(Vec3r(-0.8, -0.8, -0.8)) == doctest::Approx(0.9));

  CHECK(second_moment_diagonal(Vec3r(-1, -1, -1)) == doctest::Approx(1.0));
  CHECK(second_moment_diagonal(Vec3r(0, 0, 0)) == doctest::Approx(0.25));
  CHECK(second_moment_diagonal(Vec3r(-0.5, -0.5, -0.5)) == doctest::Approx(0.5625));
}

TEST_CASE("classification of the X-state families") {
  const TeleportationReport r1 = classify(x_state_rank3(0.3));
  CHECK_FALSE(r1.useful);
  CHECK(r1.universal);

  const TeleportationReport r2 = classify(x_state_rank4(0.5));
  CHECK(r2.useful);
  CHECK(r2.universal);

  const TeleportationReport pure = classify(pure_schmidt(std::sqrt(0.99), std::sqrt(0.01)));
  CHECK(pure.useful);
  CHECK_FALSE(pure.universal);
}

TEST_CASE("X-state fidelity follows (1 + p)/2") {
  for (double p : {0.3, 0.5, 0.9}) {
    CHECK(max_fidelity(x_state_rank3(p)) ==
          doctest::Approx(0.5 * (1.0 + p)).epsilon(1e-12));
    CHECK(max_fidelity(x_state_rank4(p)) ==
          doctest::Approx(0.5 * (1.0 + p)).epsilon(1e-12));
    CHECK(fidelity_deviation(x_state_rank3(p)) <= 1e-12);
    CHECK(fidelity_deviation(x_state_rank4(p)) <= 1e-12);
  }

  // separability boundary of the rank-4 family sits at the classical bound
  CHECK(max_fidelity(x_state_rank4(1.0 / 3.0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // near the p -> 1 limit the rank-3 family approaches the singlet
  CHECK((x_state_rank3(1.0 - 1e-9).matrix() - singlet().matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-8);
}

TEST_CASE("universal state constructor") {
  CHECK((universal_state_for_fidelity(1.0).matrix() - singlet().matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  CHECK((universal_state_for_fidelity(0.8).matrix() - werner(0.7).matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);

  const TeleportationReport boundary = classify(universal_state_for_fidelity(2.0 / 3.0 + 1e-6));
  CHECK(boundary.useful);
  CHECK(boundary.universal);

  CHECK_THROWS_AS(universal_state_for_fidelity(2.0 / 3.0), InvalidParameter);
  CHECK_THROWS_AS(universal_state_for_fidelity(1.0 + 1e-9), InvalidParameter);
}

TEST_CASE("report invariants over random states") {
  Rng rng(987);
  for (int i = 0; i < 10000; ++i) {
    const TeleportationReport rep = classify(random_density_matrix(rng));
    CHECK(std::abs(rep.max_fidelity -
                   (2.0 * rep.fully_entangled_fraction + 1.0) / 3.0) <= 1e-12);
    // direct branch expression for the fidelity
    const Vec3r& s = rep.singular_values;
    const double direct =
        rep.branch == Branch::DetPositive
            ? 0.5 * (1.0 + (s[0] + s[1] - s[2]) / 3.0)
            : 0.5 * (1.0 + (s[0] + s[1] + s[2]) / 3.0);
    CHECK(std::abs(rep.max_fidelity - direct) <= 1e-12);
    CHECK(rep.fidelity_deviation >= 0.0);
    CHECK(rep.fidelity_deviation <= 0.5);
    CHECK(rep.max_fidelity >= 0.0);
    CHECK(rep.max_fidelity <= 1.0);
    if (rep.useful && rep.universal) {
      CHECK(s[0] - s[2] <= 1e-9);
      CHECK(s.mean() > 1.0 / 3.0);
    }
  }
}

TEST_CASE("moments on the canonical diagonal reproduce F and Delta") {
  Rng rng(5151);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_density_matrix(rng);
    const TeleportationReport rep = classify(rho);
    const CanonicalForm cf = canonicalize(rho);
    const Vec3r diag = hs_decompose(cf.varrho).t.diagonal();
    const double mean = mean_fidelity_diagonal(diag);
    const double second = second_moment_diagonal(diag);
    CHECK(std::abs(rep.max_fidelity - mean) <= 1e-9);
    CHECK(std::abs(rep.fidelity_deviation -
                   std::sqrt(std::max(0.0, second - mean * mean))) <= 1e-9);
  }
}

TEST_CASE("deviation squared equals the moment difference on the diagonal") {
  Rng rng(8888);
  for (int i = 0; i < 2000; ++i) {
    const DensityMatrix rho = random_density_matrix(rng);
    const CanonicalDiag cd = canonical_diag(hs_decompose(rho).t);
    const double mean = mean_fidelity_diagonal(cd.diag);
    const double second = second_moment_diagonal(cd.diag);
    const double delta = fidelity_deviation(rho);
    CHECK(std::abs(delta * delta - (second - mean * mean)) <= 1e-12);
  }
}

TEST_CASE("pure-state deviation bound and monotonicity") {
  const double bound = 1.0 / (3.0 * std::sqrt(5.0));
  double previous = bound;
  Rng rng(606);
  for (int i = 0; i < 1000; ++i) {
    const double b2 = 0.5 * rng.uniform();
    const double delta =
        fidelity_deviation(pure_schmidt(std::sqrt(1.0 - b2), std::sqrt(b2)));
    CHECK(delta >= 0.0);
    CHECK(delta < bound + 1e-12);
  }
  // strictly decreasing in ab on a grid
  for (int i = 1; i <= 50; ++i) {
    const double b2 = 0.5 * i / 50.0;
    const double delta =
        fidelity_deviation(pure_schmidt(std::sqrt(1.0 - b2), std::sqrt(b2)));
    CHECK(delta < previous);
    previous = delta;
  }
}

TEST_CASE("positive determinant caps the fidelity at 2/3") {
  Rng rng(11213);
  int seen = 0;
  for (int i = 0; i < 20000 && seen < 1000; ++i) {
    const TeleportationReport rep = classify(random_density_matrix(rng));
    if (rep.det_t <= 0.0) continue;
    ++seen;
    CHECK(rep.max_fidelity <= 2.0 / 3.0 + 1e-12);
  }
  CHECK(seen == 1000);
}

TEST_CASE("rank-2 Bell-diagonal boundary approach") {
  const double p0 = 0.5 + 1e-6;
  const TeleportationReport rep = classify(bell_diagonal(p0, 1.0 - p0, 0.0, 0.0));
  const double f_excess = rep.max_fidelity - 2.0 / 3.0;
  CHECK(f_excess > 0.0);
  CHECK(f_excess < 1e-5);
  const double delta_gap = 1.0 / (3.0 * std::sqrt(5.0)) - rep.fidelity_deviation;
  CHECK(delta_gap > 0.0);
  CHECK(delta_gap < 1e-5);
}

TEST_CASE("fef oracle agrees with the closed form") {
  CHECK(fef_oracle(singlet(), 5, 17) >= 1.0 - 1e-6);
  CHECK(fef_oracle(werner(0.75), 5, 17) == doctest::Approx(0.75).epsilon(1e-5));

  Rng rng(2718);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho = random_density_matrix(rng);
    const double closed = fef(rho);
    const double numeric = fef_oracle(rho, 50, 1000 + i);
    CHECK(numeric <= closed + 1e-9);
    CHECK(closed - numeric <= 1e-4);
  }
}
