#pragma once

#include "qtel/linalg.hpp"
#include "qtel/state.hpp"

namespace qtel {

/// det T values with |det| at or below this are handled as the
/// non-positive-determinant branch.
inline constexpr double kDetTol = 1e-12;

/// Singular values at or below this are treated as zero when assigning signs.
inline constexpr double kSingularTol = 1e-12;

/// Signed diagonal of the canonical correlation matrix, without constructing
/// the transformed state. diag[i] = lambda_i * sigma_i with the sigma_i
/// descending; signs are all -1 when det T <= 0, and exactly one +1 (on the
/// smallest singular value) when det T > 0.
struct CanonicalDiag {
  Vec3r diag;
  Vec3r singular_values;
  double det_t;
};

CanonicalDiag canonical_diag(const Mat3r& t);

/// A state together with the product unitary that diagonalizes its
/// correlation matrix into the canonical sign pattern.
struct CanonicalForm {
  DensityMatrix source;
  DensityMatrix varrho;    // (u1 @ u2) source (u1 @ u2)^dag
  Mat2c u1;
  Mat2c u2;
  Vec3r diag;              // signed diagonal of varrho's T, |diag| descending
  double det_t;            // det of the source correlation matrix
  Vec3r singular_values;   // descending
};

/// Constructs the canonical form: SVD of T, reflections absorbed into proper
/// rotations, pairwise sign flips (pi rotations about coordinate axes) to
/// reach the canonical sign pattern, rotations lifted to 2x2 unitaries.
CanonicalForm canonicalize(const DensityMatrix& rho);

struct CanonicalCheck {
  double conjugation_residual;  // max |varrho - (u1@u2) source (u1@u2)^dag|
  double max_offdiagonal;       // max off-diagonal of varrho's T
  double diag_mismatch;         // max |diagonal of varrho's T - diag|
  bool sign_pattern_ok;
};

/// Recomputes the transformation and reports residuals and sign conformity.
CanonicalCheck verify_canonical(const CanonicalForm& cf);

}  // namespace qtel
