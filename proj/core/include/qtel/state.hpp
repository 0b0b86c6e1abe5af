#pragma once

#include <cstdint>

#include "qtel/linalg.hpp"
#include "qtel/rng.hpp"

namespace qtel {

/// Two-qubit density matrix: Hermitian, unit trace, positive semidefinite
/// (all within kStructuralTol). Construction validates; instances are
/// immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat4c& m);

  const Mat4c& matrix() const { return m_; }

  /// Smallest eigenvalue found during validation.
  double min_eigenvalue() const { return min_eig_; }

 private:
  Mat4c m_;
  double min_eig_;
};

/// Local Bloch vectors and correlation matrix of a two-qubit state:
/// rho = (I@I + r.sigma@I + I@s.sigma + sum_ij t_ij sigma_i@sigma_j) / 4.
struct BlochDecomposition {
  Vec3r r;
  Vec3r s;
  Mat3r t;
};

/// Normalized two-qubit pure state.
class PureState {
 public:
  explicit PureState(const Vec4c& amplitudes);

  const Vec4c& amplitudes() const { return amps_; }
  DensityMatrix density() const;

 private:
  Vec4c amps_;
};

/// Extracts (R, S, T) from a state via Pauli traces.
BlochDecomposition hs_decompose(const DensityMatrix& rho);

/// Rebuilds a state from (R, S, T); throws NotAState if the triple is
/// unphysical (reconstructed matrix not positive semidefinite).
DensityMatrix hs_compose(const BlochDecomposition& b);

/// Bell state |Psi_k> in the computational basis |00>,|01>,|10>,|11>:
/// Psi_0 = (|01>-|10>)/sqrt2, Psi_1 = (|00>-|11>)/sqrt2,
/// Psi_2 = (|00>+|11>)/sqrt2, Psi_3 = (|01>+|10>)/sqrt2.
const Vec4c& bell_ket(int k);

DensityMatrix singlet();
DensityMatrix maximally_mixed();

/// Pure state a|00> + b|11> with a >= b >= 0 and a^2 + b^2 = 1
/// (Schmidt basis taken as the computational basis).
DensityMatrix pure_schmidt(double a, double b);

/// sum_k p_k |Psi_k><Psi_k| over the Bell basis.
DensityMatrix bell_diagonal(double p0, double p1, double p2, double p3);

/// Bell-diagonal state with the non-singlet weight spread evenly:
/// bell_diagonal(p0, (1-p0)/3, (1-p0)/3, (1-p0)/3).
DensityMatrix werner(double p0);

/// Rank-3 X state p|Psi_0><Psi_0| + (1-p)/2 (|00><00| + |01><01|), 0 < p < 1.
/// Its Bloch form is R = (0,0,1-p), S = 0, T = -p I.
DensityMatrix x_state_rank3(double p);

/// Rank-4 X state p|Psi_0><Psi_0| + (1-p)/4 (|00><00| + |11><11|)
/// + (1-p)/2 |01><01|, 0 < p < 1. Bloch form: R = (0,0,(1-p)/2) = -S, T = -p I.
DensityMatrix x_state_rank4(double p);

/// Ginibre-induced random state G G^dag / Tr(G G^dag).
DensityMatrix random_density_matrix(Rng& rng);
DensityMatrix random_density_matrix(std::uint64_t seed);

}  // namespace qtel
