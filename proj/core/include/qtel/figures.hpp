#pragma once

#include <cstdint>

#include "qtel/canonical.hpp"
#include "qtel/state.hpp"

namespace qtel {

/// Classification branch by the sign of det T. Values with |det T| <= kDetTol
/// fall into DetNonPositive.
enum class Branch { DetNonPositive, DetPositive };

/// Deviations at or below this declare a state universal (dispersion-free).
inline constexpr double kUniversalTol = 1e-10;

/// Full set of teleportation figures of merit for one state.
struct TeleportationReport {
  double max_fidelity;             // in [0, 1]
  double fidelity_deviation;       // in [0, 1/2]
  double fully_entangled_fraction; // in [0, 1]
  double det_t;
  Vec3r singular_values;           // descending
  bool useful;                     // max_fidelity beats the classical bound 2/3
  bool universal;                  // fidelity_deviation vanishes
  Branch branch;
};

/// Fully entangled fraction from the correlation-matrix singular values:
/// (1 + s1 + s2 + s3)/4 when det T <= 0, (1 + s1 + s2 - s3)/4 otherwise.
double fef(const DensityMatrix& rho);

/// Independent lower-bounding oracle: maximizes <Psi|rho|Psi> over maximally
/// entangled |Psi> = (U @ V)|Psi_0> with Haar-seeded restarts, each refined
/// by alternating exact single-side updates (a 4x4 symmetric eigenproblem
/// per side). Never consults the closed form.
double fef_oracle(const DensityMatrix& rho, int n_restarts, std::uint64_t seed = 0);

/// Maximal average teleportation fidelity, (2 fef + 1)/3.
double max_fidelity(const DensityMatrix& rho);

/// Standard deviation of teleportation fidelity over Haar-uniform inputs,
/// evaluated on the canonical signed diagonal.
double fidelity_deviation(const DensityMatrix& rho);

/// Average fidelity of the standard protocol for a diagonal-T state with
/// signed diagonal t: (1 - (t1 + t2 + t3)/3) / 2.
double mean_fidelity_diagonal(const Vec3r& t_diag);

/// Second moment of the fidelity for a diagonal-T state.
double second_moment_diagonal(const Vec3r& t_diag);

/// Computes every figure of merit and the useful/universal classification.
TeleportationReport classify(const DensityMatrix& rho);

/// Dispersion-free state with the requested maximal fidelity, 2/3 < f <= 1:
/// the Werner state whose correlation diagonal is -(2f - 1) I.
DensityMatrix universal_state_for_fidelity(double f);

}  // namespace qtel
