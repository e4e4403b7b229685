#include "exsym/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "exsym/random.hpp"

namespace exsym {

namespace {

int bit_a(int i) { return (i >> 1) & 1; }
int bit_b(int i) { return i & 1; }

// z eigenvalue of sigma_z for a basis bit: |0> -> +1, |1> -> -1.
double z_of(int bit) { return bit == 0 ? 1.0 : -1.0; }

constexpr std::size_t kChunk = 1024;

struct Phases {
  double a;
  double b;
};

// Accumulated phases of one trajectory. The field increment over a step has
// variance rate * h / mu^2; the Hamiltonian multiplies it by mu.
Phases trajectory_phases(const ChannelParams& params, const NoiseTrajectoryConfig& cfg,
                         std::size_t n_steps, std::size_t index) {
  Rng rng = make_stream(cfg.seed, index);
  std::normal_distribution<double> n(0.0, 1.0);
  const double h = params.time / static_cast<double>(n_steps);
  const double sd_a = std::sqrt(params.rate_a * h) / cfg.mu;
  const double sd_b = std::sqrt(params.rate_b * h) / cfg.mu;
  Phases p{0.0, 0.0};
  for (std::size_t s = 0; s < n_steps; ++s) {
    p.a += cfg.mu * sd_a * n(rng);
    p.b += cfg.mu * sd_b * n(rng);
  }
  return p;
}

// Per-entry sums of the real and imaginary parts and their squares of
// exp(i theta_ij) for one chunk of trajectories (upper triangle only).
struct ChunkSums {
  std::array<double, 16> re{}, im{}, re2{}, im2{};
};

ChunkSums accumulate_chunk(const std::vector<Phases>& phases, std::size_t begin,
                           std::size_t end) {
  ChunkSums s;
  for (std::size_t k = begin; k < end; ++k) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        double theta = 0.5 * (phases[k].a * (z_of(bit_a(i)) - z_of(bit_a(j))) +
                              phases[k].b * (z_of(bit_b(i)) - z_of(bit_b(j))));
        double c = std::cos(theta);
        double sn = std::sin(theta);
        int e = 4 * i + j;
        s.re[e] += c;
        s.im[e] += sn;
        s.re2[e] += c * c;
        s.im2[e] += sn * sn;
      }
    }
  }
  return s;
}

std::size_t step_count(const ChannelParams& params, const NoiseTrajectoryConfig& cfg) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(params.time / cfg.dt)));
}

MonteCarloResult finish(const DensityMatrix& rho0, const std::vector<ChunkSums>& chunks,
                        std::size_t n, std::size_t n_steps) {
  ChunkSums total;
  for (const auto& c : chunks) {
    for (int e = 0; e < 16; ++e) {
      total.re[e] += c.re[e];
      total.im[e] += c.im[e];
      total.re2[e] += c.re2[e];
      total.im2[e] += c.im2[e];
    }
  }
  const double nd = static_cast<double>(n);
  Matrix4 est = rho0.matrix();
  Matrix4 se = Matrix4::Zero();
  double se_max = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      int e = 4 * i + j;
      Complex mean_phase(total.re[e] / nd, total.im[e] / nd);
      double var_c = 0.0, var_s = 0.0;
      if (n > 1) {
        var_c = std::max(0.0, (total.re2[e] - nd * mean_phase.real() * mean_phase.real()) / (nd - 1));
        var_s = std::max(0.0, (total.im2[e] - nd * mean_phase.imag() * mean_phase.imag()) / (nd - 1));
      }
      // Sample of rho_ij e^{i theta}: its re/im parts are linear in (cos, sin)
      // with coefficients from rho_ij; cos and sin terms are treated as
      // independent for the error bar.
      Complex r = rho0(i, j);
      double se_re = std::sqrt((r.real() * r.real() * var_c + r.imag() * r.imag() * var_s) / nd);
      double se_im = std::sqrt((r.imag() * r.imag() * var_c + r.real() * r.real() * var_s) / nd);
      est(i, j) = r * mean_phase;
      est(j, i) = std::conj(est(i, j));
      se(i, j) = se(j, i) = Complex(se_re, se_im);
      se_max = std::max({se_max, se_re, se_im});
    }
  }
  return {DensityMatrix(est), se, se_max, n_steps};
}

bool trivial_evolution(const ChannelParams& params) {
  return params.time == 0.0 || (params.rate_a == 0.0 && params.rate_b == 0.0);
}

}  // namespace

void ChannelParams::validate() const {
  if (!(rate_a >= 0.0) || !(rate_b >= 0.0)) {
    throw std::invalid_argument("dephasing rates must be non-negative");
  }
  if (!(time >= 0.0)) throw std::invalid_argument("time must be non-negative");
}

void NoiseTrajectoryConfig::validate() const {
  if (n_trajectories == 0) throw std::invalid_argument("n_trajectories must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(mu != 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and nonzero");
}

double gamma_factor(double rate, double time) {
  if (!(rate >= 0.0) || !(time >= 0.0)) {
    throw std::invalid_argument("gamma_factor: rate and time must be non-negative");
  }
  return std::exp(-time * rate / 2.0);
}

DephasingFactors dephasing_factors(const ChannelParams& params) {
  params.validate();
  return {gamma_factor(params.rate_a, params.time), gamma_factor(params.rate_b, params.time)};
}

Matrix4 dephasing_mask(DephasingFactors f) {
  Matrix4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = 1.0;
      if (bit_a(i) != bit_a(j)) v *= f.a;
      if (bit_b(i) != bit_b(j)) v *= f.b;
      m(i, j) = v;
    }
  }
  return m;
}

Matrix4 dephase_operator(const Matrix4& m, DephasingFactors f) {
  return m.cwiseProduct(dephasing_mask(f));
}

DensityMatrix apply_dephasing(const DensityMatrix& rho0, DephasingFactors f) {
  if (!(std::abs(f.a) <= 1.0) || !(std::abs(f.b) <= 1.0)) {
    throw std::invalid_argument("dephasing factors must lie in [-1, 1]");
  }
  return DensityMatrix(dephase_operator(rho0.matrix(), f));
}

DensityMatrix apply_dephasing(const DensityMatrix& rho0, const ChannelParams& params) {
  return apply_dephasing(rho0, dephasing_factors(params));
}

MonteCarloResult monte_carlo_dephasing(const DensityMatrix& rho0, const ChannelParams& params,
                                       const NoiseTrajectoryConfig& cfg) {
  params.validate();
  cfg.validate();
  const std::size_t n_steps = step_count(params, cfg);
  if (trivial_evolution(params)) return {rho0, Matrix4::Zero(), 0.0, n_steps};

  const std::size_t n = cfg.n_trajectories;
  std::vector<Phases> phases(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    phases[k] = trajectory_phases(params, cfg, n_steps, static_cast<std::size_t>(k));
  }

  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunks(n_chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
    std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    chunks[c] = accumulate_chunk(phases, begin, std::min(n, begin + kChunk));
  }
  return finish(rho0, chunks, n, n_steps);
}

MonteCarloResult monte_carlo_dephasing_serial(const DensityMatrix& rho0,
                                              const ChannelParams& params,
                                              const NoiseTrajectoryConfig& cfg) {
  params.validate();
  cfg.validate();
  const std::size_t n_steps = step_count(params, cfg);
  if (trivial_evolution(params)) return {rho0, Matrix4::Zero(), 0.0, n_steps};

  const std::size_t n = cfg.n_trajectories;
  std::vector<Phases> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = trajectory_phases(params, cfg, n_steps, k);

  std::vector<ChunkSums> chunks;
  for (std::size_t begin = 0; begin < n; begin += kChunk) {
    chunks.push_back(accumulate_chunk(phases, begin, std::min(n, begin + kChunk)));
  }
  return finish(rho0, chunks, n, n_steps);
}

}  // namespace exsym
