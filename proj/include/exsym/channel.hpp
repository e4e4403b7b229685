#pragma once

#include <cstddef>
#include <cstdint>

#include "exsym/linalg.hpp"

namespace exsym {

/// Local dephasing rates of the two qubits and the evaluation time.
struct ChannelParams {
  double rate_a = 0.0;  // Gamma_A, inverse time
  double rate_b = 0.0;  // Gamma_B, inverse time
  double time = 0.0;

  static ChannelParams identical(double rate, double time) { return {rate, rate, time}; }

  bool is_identical() const { return rate_a == rate_b; }
  void validate() const;
};

/// Off-diagonal attenuation factors per qubit. Physical classical noise gives
/// values in (0, 1]; the spin-bath reduction also produces negative values,
/// so anything in [-1, 1] is accepted.
struct DephasingFactors {
  double a = 1.0;
  double b = 1.0;
};

/// exp(-time * rate / 2). Throws std::invalid_argument on negative input.
double gamma_factor(double rate, double time);

DephasingFactors dephasing_factors(const ChannelParams& params);

/// Entrywise attenuation pattern: entry (i, j) is gamma_a when the first
/// qubit differs between basis states i and j, times gamma_b when the second
/// differs.
Matrix4 dephasing_mask(DephasingFactors f);

/// The dephasing map on an arbitrary 4x4 operator (no state validation);
/// used for Choi construction on |i><j|.
Matrix4 dephase_operator(const Matrix4& m, DephasingFactors f);

DensityMatrix apply_dephasing(const DensityMatrix& rho0, const ChannelParams& params);
DensityMatrix apply_dephasing(const DensityMatrix& rho0, DephasingFactors f);

struct NoiseTrajectoryConfig {
  std::size_t n_trajectories = 100000;
  double dt = 0.01;
  std::uint64_t seed = 0;
  double mu = 1.0;  // gyromagnetic ratio; cancels out of every observable

  void validate() const;
};

struct MonteCarloResult {
  DensityMatrix rho;
  Matrix4 entry_stderr;  // (re stderr, im stderr) packed as a complex number
  double stderr_max = 0.0;
  std::size_t n_steps = 0;
};

/// Trajectory average of U rho0 U^dagger with U generated by white-noise
/// fields integrated step by step. Trajectories run under OpenMP; the result
/// is bitwise identical to monte_carlo_dephasing_serial for any thread count.
MonteCarloResult monte_carlo_dephasing(const DensityMatrix& rho0, const ChannelParams& params,
                                       const NoiseTrajectoryConfig& cfg);

MonteCarloResult monte_carlo_dephasing_serial(const DensityMatrix& rho0,
                                              const ChannelParams& params,
                                              const NoiseTrajectoryConfig& cfg);

}  // namespace exsym
