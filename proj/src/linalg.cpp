#include "exsym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace exsym {

namespace {

constexpr double kTieTol = 1e-12;

template <int N>
void canonicalize_phase(Eigen::Ref<Vector<N>> v) {
  int best = 0;
  for (int k = 1; k < N; ++k) {
    if (std::abs(v(k)) > std::abs(v(best)) + kTieTol) best = k;
  }
  double mag = std::abs(v(best));
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
}

// Lexicographic comparison on (real, imag) of the first differing component.
template <int N>
bool vector_precedes(const Vector<N>& a, const Vector<N>& b) {
  for (int k = 0; k < N; ++k) {
    if (std::abs(a(k).real() - b(k).real()) > kTieTol) return a(k).real() > b(k).real();
    if (std::abs(a(k).imag() - b(k).imag()) > kTieTol) return a(k).imag() > b(k).imag();
  }
  return false;
}

}  // namespace

template <int N>
EigenSystem<N> hermitian_eig(const Matrix<N>& a, double hermitian_tol) {
  if (!is_hermitian<N>(a, hermitian_tol)) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix<N>> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }
  Matrix<N> vecs = solver.eigenvectors();
  for (int k = 0; k < N; ++k) canonicalize_phase<N>(vecs.col(k));

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  const auto& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (std::abs(vals(i) - vals(j)) > kTieTol) return vals(i) > vals(j);
    return vector_precedes<N>(vecs.col(i), vecs.col(j));
  });

  EigenSystem<N> out;
  for (int k = 0; k < N; ++k) {
    out.values[k] = vals(order[k]);
    out.vectors.col(k) = vecs.col(order[k]);
  }
  return out;
}

template <int N>
Matrix<N> unitary_exp(const Matrix<N>& hermitian) {
  auto eig = hermitian_eig<N>(hermitian);
  Vector<N> phases;
  for (int k = 0; k < N; ++k) phases(k) = std::polar(1.0, eig.values[k]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

template EigenSystem<2> hermitian_eig<2>(const Matrix<2>&, double);
template EigenSystem<3> hermitian_eig<3>(const Matrix<3>&, double);
template EigenSystem<4> hermitian_eig<4>(const Matrix<4>&, double);
template EigenSystem<16> hermitian_eig<16>(const Matrix<16>&, double);
template EigenSystem<1> hermitian_eig<1>(const Matrix<1>&, double);
template Matrix<1> unitary_exp<1>(const Matrix<1>&);
template Matrix<2> unitary_exp<2>(const Matrix<2>&);
template Matrix<3> unitary_exp<3>(const Matrix<3>&);
template Matrix<4> unitary_exp<4>(const Matrix<4>&);

Matrix2 pauli_z() {
  Matrix2 z = Matrix2::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

std::string DensityMatrix::validate(const Matrix4& m) {
  if (!m.allFinite()) return "entries are not finite";
  if (!is_hermitian<4>(m, kHermitianTol)) return "matrix is not Hermitian";
  if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) {
    return "trace " + std::to_string(m.trace().real()) + " differs from 1";
  }
  auto eig = hermitian_eig<4>(m, kHermitianTol);
  if (eig.values.back() < -kPositivityTol) {
    return "matrix has negative eigenvalue " + std::to_string(eig.values.back());
  }
  return {};
}

DensityMatrix::DensityMatrix(const Matrix4& m) : mat_(m) {
  if (auto why = validate(m); !why.empty()) {
    throw std::invalid_argument("invalid density matrix: " + why);
  }
}

DensityMatrix DensityMatrix::pure(const Vector4& psi) {
  double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("pure state from zero vector");
  Vector4 v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix4::Identity() * 0.25);
}

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eig<4>(mat_, kHermitianTol).values.back();
}

}  // namespace exsym
