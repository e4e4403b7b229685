#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "exsym/linalg.hpp"

namespace exsym {

/// One environment spin: initial amplitudes on |up>, |down> and its coupling
/// frequency to the central spin.
struct BathSpin {
  Complex alpha;
  Complex beta;
  double omega = 0.0;
};

struct BathSpec {
  std::string label;
  std::vector<BathSpin> spins;

  /// Throws std::invalid_argument unless |alpha|^2 + |beta|^2 = 1 within tol
  /// and omega is finite for every spin.
  void validate(double tol = 1e-12) const;
};

/// Central two-spin state a_uu|uu> + a_ud|ud> + a_du|du> + a_dd|dd>; the
/// basis order matches DensityMatrix (up = 0).
struct CentralState {
  std::array<Complex, 4> amplitudes;

  static CentralState from_vector(const Vector4& v);
  Vector4 vector() const;
  void validate(double tol = 1e-12) const;
};

/// r(t) = prod_k (|alpha_k|^2 e^{-2i omega_k t} + |beta_k|^2 e^{2i omega_k t}).
Complex decoherence_factor(const BathSpec& bath, double t);

/// Same product accumulated in reverse spin order.
Complex decoherence_factor_reversed(const BathSpec& bath, double t);

/// Central-spin state after tracing out two independent baths. The coherence
/// between row and column basis states picks up r_n when spin n goes from up
/// (row) to down (column), conj(r_n) for the reverse, 1 otherwise.
DensityMatrix reduced_density(const BathSpec& bath_a, const BathSpec& bath_b,
                              const CentralState& psi0, double t);

/// Two copies of `spec`: identical amplitudes and frequencies for both baths.
std::pair<BathSpec, BathSpec> identical_bath(const BathSpec& spec);

struct RandomBathOptions {
  double omega_min = 0.0;
  double omega_max = 1.0;
};

/// Frequencies uniform in [omega_min, omega_max). With equal_amplitudes both
/// amplitudes are 1/sqrt2; otherwise |alpha|^2 is uniform on [0, 1] and both
/// amplitudes carry uniform random phases.
BathSpec random_bath(std::size_t n_spins, std::uint64_t seed, bool equal_amplitudes,
                     const RandomBathOptions& options = {});

}  // namespace exsym
