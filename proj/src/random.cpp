#include "exsym/random.hpp"

#include <cmath>

namespace exsym {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  double re = n(rng);
  double im = n(rng);
  return {re, im};
}

template <int N>
Matrix<N> haar_unitary(Rng& rng) {
  Matrix<N> g;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) g(i, j) = complex_normal(rng);
  Eigen::HouseholderQR<Matrix<N>> qr(g);
  Matrix<N> q = qr.householderQ();
  const Matrix<N>& r = qr.matrixQR();
  for (int k = 0; k < N; ++k) {
    double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <int N>
Matrix<N> random_hermitian(Rng& rng, double scale) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix<N> h;
  for (int i = 0; i < N; ++i) {
    h(i, i) = scale * n(rng);
    for (int j = i + 1; j < N; ++j) {
      h(i, j) = scale * complex_normal(rng);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

template Matrix<1> haar_unitary<1>(Rng&);
template Matrix<2> haar_unitary<2>(Rng&);
template Matrix<3> haar_unitary<3>(Rng&);
template Matrix<4> haar_unitary<4>(Rng&);
template Matrix<2> random_hermitian<2>(Rng&, double);
template Matrix<3> random_hermitian<3>(Rng&, double);
template Matrix<4> random_hermitian<4>(Rng&, double);
template Matrix<16> random_hermitian<16>(Rng&, double);

DensityMatrix random_density(Rng& rng) {
  Matrix4 g;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) g(i, j) = complex_normal(rng);
  Matrix4 m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  return DensityMatrix(m);
}

Vector4 random_state_vector(Rng& rng) {
  Vector4 v;
  for (int i = 0; i < 4; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

}  // namespace exsym
