#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace exsym {

using Complex = std::complex<double>;

template <int N>
using Matrix = Eigen::Matrix<Complex, N, N>;
template <int N>
using Vector = Eigen::Matrix<Complex, N, 1>;

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;
using Matrix16 = Matrix<16>;
using Vector4 = Vector<4>;
using Vector16 = Vector<16>;

/// Raised when a numerical precondition (positivity, complete positivity)
/// fails on data that was otherwise well formed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <int N>
Matrix<N> matmul(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b;
}

template <int N>
Matrix<N> dagger(const Matrix<N>& a) {
  return a.adjoint();
}

template <int N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

template <int N>
bool approx_equal(const Matrix<N>& a, const Matrix<N>& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

template <int N>
bool is_hermitian(const Matrix<N>& a, double tol) {
  return max_abs_diff<N>(a, a.adjoint()) <= tol;
}

/// True iff max |(a^dagger a - I)_ij| <= tol.
template <int N>
bool is_unitary(const Matrix<N>& a, double tol) {
  return max_abs_diff<N>(a.adjoint() * a, Matrix<N>::Identity()) <= tol;
}

template <int N>
struct EigenSystem {
  std::array<double, N> values;  // descending
  Matrix<N> vectors;             // column k pairs with values[k]
};

/// Hermitian eigendecomposition with deterministic ordering: eigenvalues
/// descending, each eigenvector rotated so its largest-magnitude component is
/// real positive, and near-equal eigenvalues (within 1e-12) ordered by the
/// first differing component of the canonicalized eigenvectors.
/// Throws std::invalid_argument when `a` is not Hermitian within `hermitian_tol`.
template <int N>
EigenSystem<N> hermitian_eig(const Matrix<N>& a, double hermitian_tol = 1e-10);

Matrix2 pauli_z();
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// exp(iH) for Hermitian H, via the spectral decomposition.
template <int N>
Matrix<N> unitary_exp(const Matrix<N>& hermitian);

/// Two-qubit density matrix, basis order |00>, |01>, |10>, |11>.
/// Construction validates hermiticity and trace (1e-12) and positivity
/// (smallest eigenvalue >= -1e-10).
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityTol = 1e-10;

  explicit DensityMatrix(const Matrix4& m);

  static DensityMatrix pure(const Vector4& psi);
  static DensityMatrix maximally_mixed();

  const Matrix4& matrix() const { return mat_; }
  Complex operator()(int i, int j) const { return mat_(i, j); }
  double min_eigenvalue() const;

  /// Returns a description of the first violated invariant, or an empty
  /// string when `m` is a valid state.
  static std::string validate(const Matrix4& m);

 private:
  Matrix4 mat_;
};

}  // namespace exsym
