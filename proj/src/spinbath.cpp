#include "exsym/spinbath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exsym/random.hpp"

namespace exsym {

namespace {

// |a|^2 e^{-2iwt} + |b|^2 e^{2iwt} = cos 2wt + i (|b|^2 - |a|^2) sin 2wt
Complex spin_factor(const BathSpin& s, double t) {
  const double pa = std::norm(s.alpha);
  const double pb = std::norm(s.beta);
  const double d = std::clamp((pb - pa) / (pa + pb), -1.0, 1.0);
  const double theta = 2.0 * s.omega * t;
  return {std::cos(theta), d * std::sin(theta)};
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

// Coherence factor of one central spin between row bit and column bit.
Complex coherence(int row_bit, int col_bit, Complex r) {
  if (row_bit == col_bit) return 1.0;
  return row_bit == 0 ? r : std::conj(r);
}

}  // namespace

void BathSpec::validate(double tol) const {
  for (std::size_t k = 0; k < spins.size(); ++k) {
    const auto& s = spins[k];
    if (!std::isfinite(s.omega)) {
      throw std::invalid_argument("bath spin " + std::to_string(k) + ": omega is not finite");
    }
    if (std::abs(std::norm(s.alpha) + std::norm(s.beta) - 1.0) > tol) {
      throw std::invalid_argument("bath spin " + std::to_string(k) + ": amplitudes not normalized");
    }
  }
}

CentralState CentralState::from_vector(const Vector4& v) {
  return CentralState{{v(0), v(1), v(2), v(3)}};
}

Vector4 CentralState::vector() const {
  return Vector4(amplitudes[0], amplitudes[1], amplitudes[2], amplitudes[3]);
}

void CentralState::validate(double tol) const {
  double n = 0.0;
  for (auto a : amplitudes) n += std::norm(a);
  if (std::abs(n - 1.0) > tol) throw std::invalid_argument("central state is not normalized");
}

Complex decoherence_factor(const BathSpec& bath, double t) {
  check_time(t);
  bath.validate();
  Complex r = 1.0;
  for (const auto& s : bath.spins) r *= spin_factor(s, t);
  return r;
}

Complex decoherence_factor_reversed(const BathSpec& bath, double t) {
  check_time(t);
  bath.validate();
  Complex r = 1.0;
  for (auto it = bath.spins.rbegin(); it != bath.spins.rend(); ++it) r *= spin_factor(*it, t);
  return r;
}

DensityMatrix reduced_density(const BathSpec& bath_a, const BathSpec& bath_b,
                              const CentralState& psi0, double t) {
  psi0.validate();
  const Complex r1 = decoherence_factor(bath_a, t);
  const Complex r2 = decoherence_factor(bath_b, t);
  const Vector4 v = psi0.vector();
  Matrix4 rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex f = coherence((i >> 1) & 1, (j >> 1) & 1, r1) * coherence(i & 1, j & 1, r2);
      rho(i, j) = v(i) * std::conj(v(j)) * f;
    }
  }
  return DensityMatrix(rho);
}

std::pair<BathSpec, BathSpec> identical_bath(const BathSpec& spec) {
  spec.validate();
  return {spec, spec};
}

BathSpec random_bath(std::size_t n_spins, std::uint64_t seed, bool equal_amplitudes,
                     const RandomBathOptions& options) {
  if (n_spins == 0) throw std::invalid_argument("random_bath needs at least one spin");
  if (!(options.omega_max >= options.omega_min)) {
    throw std::invalid_argument("omega interval is empty");
  }
  Rng rng = make_stream(seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BathSpec bath;
  bath.label = equal_amplitudes ? "random-equal-amplitude" : "random";
  bath.spins.reserve(n_spins);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < n_spins; ++k) {
    BathSpin s;
    s.omega = options.omega_min + (options.omega_max - options.omega_min) * unit(rng);
    if (equal_amplitudes) {
      s.alpha = h;
      s.beta = h;
    } else {
      const double p = unit(rng);
      s.alpha = std::polar(std::sqrt(p), 2.0 * std::numbers::pi * unit(rng));
      s.beta = std::polar(std::sqrt(1.0 - p), 2.0 * std::numbers::pi * unit(rng));
    }
    bath.spins.push_back(s);
  }
  return bath;
}

}  // namespace exsym
