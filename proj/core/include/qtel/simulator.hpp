#pragma once

#include <array>
#include <cstdint>

#include "qtel/linalg.hpp"
#include "qtel/rng.hpp"
#include "qtel/state.hpp"

namespace qtel {

/// The four Bell projectors with their correlation matrices and the Pauli
/// correction Bob applies for each measurement outcome.
struct BellBasis {
  std::array<Vec4c, 4> kets;
  std::array<Mat4c, 4> projectors;
  std::array<Mat3r, 4> t_matrices;   // T_0 = -I, T_1 = diag(-1,1,1), ...
  std::array<Mat2c, 4> corrections;  // sigma_0 .. sigma_3
};

const BellBasis& bell_basis();

/// Monte Carlo estimates of the fidelity moments over Haar-uniform inputs.
struct SimulationStats {
  std::int64_t n_samples;
  double mean_fidelity;
  double std_fidelity;  // population (divide-by-n) standard deviation
  double stderr_mean;   // sample std (n-1) / sqrt(n)
  double stderr_std;    // from the fourth central moment
  std::uint64_t seed;
};

/// Running mean and central moments up to order four, with a deterministic
/// pairwise merge so partitioned sampling reduces to the same result.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance_population() const { return n_ > 0 ? m2_ / n_ : 0.0; }
  double variance_sample() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }
  double fourth_central_moment() const { return n_ > 0 ? m4_ / n_ : 0.0; }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

/// Fidelity of teleporting the pure input with Bloch vector a through the
/// diagonal-T resource state varrho, by explicit protocol algebra: project
/// the joint state on each Bell outcome, apply the Pauli correction, partial
/// trace, overlap. The result is cross-checked against (1 - a^T T a)/2 and a
/// disagreement beyond 1e-10 raises DerivationMismatch.
double teleport_fidelity_exact(const DensityMatrix& varrho, const Vec3r& a);

/// Unit vector uniform on the sphere (normalized Gaussian triple).
Vec3r sample_bloch_uniform(Rng& rng);

/// Runs teleport_fidelity_exact over n Haar-uniform inputs. Deterministic
/// per seed.
SimulationStats monte_carlo_stats(const DensityMatrix& varrho, std::int64_t n,
                                  std::uint64_t seed);

/// Monte Carlo check of the sphere-average identities
///   int da a^T T a      = Tr T / 3
///   int da (a^T T a)^2  = [(Tr T)^2 + Tr(T T^dag) + Tr T^2] / 15.
struct SchurCheck {
  std::int64_t n_samples;
  double quadratic_estimate;
  double quadratic_expected;
  double quadratic_stderr;
  double quadratic_z;
  double quartic_estimate;
  double quartic_expected;
  double quartic_stderr;
  double quartic_z;
};

SchurCheck verify_schur_integrals(const Mat3r& t, std::int64_t n, std::uint64_t seed);

/// Haar-distributed 2x2 unitary via Gram-Schmidt of a complex Gaussian
/// matrix with positive-diagonal normalization.
Mat2c haar_su2(Rng& rng);

/// Average of (U @ U) rho (U @ U)^dag over n Haar-sampled single-qubit
/// unitaries. Leaves the singlet overlap invariant and drives the
/// correlation matrix toward isotropy as n grows.
DensityMatrix bilateral_twirl(const DensityMatrix& rho, int n, std::uint64_t seed);

}  // namespace qtel
