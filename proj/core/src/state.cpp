#include "qtel/state.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qtel/errors.hpp"

namespace qtel {

namespace {

double smallest_eigenvalue(const Mat4c& m) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Mat4c compose_matrix(const BlochDecomposition& b) {
  Mat4c m = kron22(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    m += b.r[i] * kron22(pauli(i + 1), pauli(0));
    m += b.s[i] * kron22(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j) m += b.t(i, j) * kron22(pauli(i + 1), pauli(j + 1));
  }
  return 0.25 * m;
}

}  // namespace

DensityMatrix::DensityMatrix(const Mat4c& m) : m_(m) {
  if (!m.allFinite()) throw InvalidState("density matrix has non-finite entries");
  if (!is_hermitian(m))
    throw InvalidState("density matrix is not Hermitian within 1e-10");
  if (std::abs(m.trace().real() - 1.0) > kStructuralTol ||
      std::abs(m.trace().imag()) > kStructuralTol)
    throw InvalidState("density matrix trace differs from 1 beyond 1e-10");
  min_eig_ = smallest_eigenvalue(m);
  if (min_eig_ < -kStructuralTol) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite (smallest eigenvalue "
       << min_eig_ << ")";
    throw InvalidState(os.str(), min_eig_);
  }
}

PureState::PureState(const Vec4c& amplitudes) : amps_(amplitudes) {
  if (std::abs(amps_.norm() - 1.0) > 1e-12)
    throw InvalidParameter("pure-state amplitudes must have unit norm");
}

DensityMatrix PureState::density() const {
  return DensityMatrix(amps_ * amps_.adjoint());
}

namespace {

const Mat4c& pauli_kron(int i, int j) {
  static const std::array<Mat4c, 16> ops = [] {
    std::array<Mat4c, 16> k;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) k[4 * a + b] = kron22(pauli(a), pauli(b));
    return k;
  }();
  return ops[static_cast<std::size_t>(4 * i + j)];
}

}  // namespace

BlochDecomposition hs_decompose(const DensityMatrix& rho) {
  const Mat4c& m = rho.matrix();
  BlochDecomposition b;
  auto trace_with = [&m](const Mat4c& op) {
    // Tr(m op) as an entrywise sum, no intermediate product.
    cplx tr(0.0, 0.0);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) tr += m(r, c) * op(c, r);
    if (std::abs(tr.imag()) > kStructuralTol)
      throw InvalidState("Pauli expectation has a non-real value");
    return tr.real();
  };
  for (int i = 0; i < 3; ++i) {
    b.r[i] = trace_with(pauli_kron(i + 1, 0));
    b.s[i] = trace_with(pauli_kron(0, i + 1));
    for (int j = 0; j < 3; ++j) b.t(i, j) = trace_with(pauli_kron(i + 1, j + 1));
  }
  return b;
}

DensityMatrix hs_compose(const BlochDecomposition& b) {
  const Mat4c m = compose_matrix(b);
  try {
    return DensityMatrix(m);
  } catch (const InvalidState& e) {
    throw NotAState(std::string("hs_compose: ") + e.what(), e.min_eigenvalue());
  }
}

const Vec4c& bell_ket(int k) {
  static const std::array<Vec4c, 4> kets = [] {
    const double inv = 1.0 / std::sqrt(2.0);
    std::array<Vec4c, 4> v;
    v[0] << 0, inv, -inv, 0;
    v[1] << inv, 0, 0, -inv;
    v[2] << inv, 0, 0, inv;
    v[3] << 0, inv, inv, 0;
    return v;
  }();
  return kets.at(static_cast<std::size_t>(k));
}

DensityMatrix singlet() { return DensityMatrix(bell_ket(0) * bell_ket(0).adjoint()); }

DensityMatrix maximally_mixed() { return DensityMatrix(0.25 * Mat4c::Identity()); }

DensityMatrix pure_schmidt(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || a < b)
    throw InvalidParameter("pure_schmidt: requires a >= b >= 0");
  if (std::abs(a * a + b * b - 1.0) > 1e-12)
    throw InvalidParameter("pure_schmidt: a^2 + b^2 must equal 1");
  Vec4c amps;
  amps << a, 0, 0, b;
  return PureState(amps).density();
}

DensityMatrix bell_diagonal(double p0, double p1, double p2, double p3) {
  const std::array<double, 4> p{p0, p1, p2, p3};
  double sum = 0.0;
  for (double w : p) {
    if (!(w >= 0.0)) throw InvalidParameter("bell_diagonal: weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidParameter("bell_diagonal: weights must sum to 1");
  Mat4c m = Mat4c::Zero();
  for (int k = 0; k < 4; ++k) m += p[k] * (bell_ket(k) * bell_ket(k).adjoint());
  return DensityMatrix(m);
}

DensityMatrix werner(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw InvalidParameter("werner: p0 must be in [0, 1]");
  const double rest = (1.0 - p0) / 3.0;
  return bell_diagonal(p0, rest, rest, rest);
}

DensityMatrix x_state_rank3(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidParameter("x_state_rank3: p must be in (0, 1)");
  Mat4c m = p * (bell_ket(0) * bell_ket(0).adjoint());
  m(0, 0) += (1.0 - p) / 2.0;
  m(1, 1) += (1.0 - p) / 2.0;
  return DensityMatrix(m);
}

DensityMatrix x_state_rank4(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidParameter("x_state_rank4: p must be in (0, 1)");
  Mat4c m = p * (bell_ket(0) * bell_ket(0).adjoint());
  m(0, 0) += (1.0 - p) / 4.0;
  m(3, 3) += (1.0 - p) / 4.0;
  m(1, 1) += (1.0 - p) / 2.0;
  return DensityMatrix(m);
}

DensityMatrix random_density_matrix(Rng& rng) {
  Mat4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Mat4c m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

DensityMatrix random_density_matrix(std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(rng);
}

}  // namespace qtel
