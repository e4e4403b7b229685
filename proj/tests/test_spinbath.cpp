#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "exsym/channel.hpp"
#include "exsym/random.hpp"
#include "exsym/spinbath.hpp"
#include "exsym/symmetry.hpp"

using namespace exsym;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

BathSpec single_spin(double omega) { return BathSpec{"single", {{kH, kH, omega}}}; }

CentralState random_central(Rng& rng) { return CentralState::from_vector(random_state_vector(rng)); }

}  // namespace

TEST(DecoherenceFactor, TimeZero) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(decoherence_factor(random_bath(20, seed, false), 0.0), Complex(1.0, 0.0));
  }
}

TEST(DecoherenceFactor, SingleSpinEqualAmplitudes) {
  // factor reduces to cos(2 omega t)
  EXPECT_NEAR(std::abs(decoherence_factor(single_spin(1.0), std::numbers::pi / 4)), 0.0, 1e-15);
  for (double t = 0.0; t < 5.0; t += 0.37) {
    Complex r = decoherence_factor(single_spin(0.8), t);
    EXPECT_NEAR(r.real(), std::cos(1.6 * t), 1e-14);
    EXPECT_EQ(r.imag(), 0.0);
  }
}

TEST(DecoherenceFactor, ModulusBoundAndDecay) {
  auto bath = random_bath(20, 4, false);
  double late_sum = 0.0;
  int late_n = 0;
  for (int k = 0; k <= 500; ++k) {
    const double t = 0.1 * k;
    const double m = std::abs(decoherence_factor(bath, t));
    EXPECT_LE(m, 1.0);
    if (k >= 200) {
      late_sum += m;
      ++late_n;
    }
  }
  // recurrences exist, so only the time average is small
  EXPECT_LT(late_sum / late_n, 0.05);
}

TEST(DecoherenceFactor, OrderIndependent) {
  auto bath = random_bath(50, 8, false);
  for (double t : {0.3, 2.0, 17.0}) {
    EXPECT_LE(std::abs(decoherence_factor(bath, t) - decoherence_factor_reversed(bath, t)), 1e-13);
  }
}

TEST(DecoherenceFactor, Errors) {
  BathSpec bad{"bad", {{1.0, 1.0, 1.0}}};
  EXPECT_THROW(decoherence_factor(bad, 1.0), std::invalid_argument);
  EXPECT_THROW(decoherence_factor(single_spin(1.0), -1.0), std::invalid_argument);
}

TEST(ReducedDensity, TimeZeroIsProjector) {
  Rng rng = make_stream(40, 0);
  auto psi = random_central(rng);
  auto bath = random_bath(10, 1, false);
  auto rho = reduced_density(bath, bath, psi, 0.0);
  EXPECT_LE(max_abs_diff<4>(rho.matrix(), psi.vector() * psi.vector().adjoint()), 0.0);
}

TEST(ReducedDensity, GeneralFactorPattern) {
  // Coherence pattern for distinct baths, written out entry by entry.
  Rng rng = make_stream(41, 0);
  auto psi = random_central(rng);
  auto ba = random_bath(5, 2, false);
  auto bb = random_bath(7, 3, false);
  const double t = 1.3;
  const Complex r1 = decoherence_factor(ba, t), r2 = decoherence_factor(bb, t);
  const auto& a = psi.amplitudes;
  auto rho = reduced_density(ba, bb, psi, t);
  EXPECT_LE(std::abs(rho(0, 1) - a[0] * std::conj(a[1]) * r2), 1e-15);
  EXPECT_LE(std::abs(rho(0, 2) - a[0] * std::conj(a[2]) * r1), 1e-15);
  EXPECT_LE(std::abs(rho(0, 3) - a[0] * std::conj(a[3]) * r1 * r2), 1e-15);
  EXPECT_LE(std::abs(rho(1, 2) - a[1] * std::conj(a[2]) * r1 * std::conj(r2)), 1e-15);
  EXPECT_LE(std::abs(rho(1, 3) - a[1] * std::conj(a[3]) * r1), 1e-15);
  EXPECT_LE(std::abs(rho(2, 3) - a[2] * std::conj(a[3]) * r2), 1e-15);
  EXPECT_LE(std::abs(rho(3, 0) - std::conj(a[0]) * a[3] * std::conj(r1) * std::conj(r2)), 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rho(i, i).real(), std::norm(a[i]), 1e-15);
}

TEST(ReducedDensity, EqualAmplitudeIdenticalBathsMatchChannel) {
  Rng rng = make_stream(42, 0);
  auto [ba, bb] = identical_bath(random_bath(20, 9, true));
  for (int s = 0; s < 20; ++s) {
    auto psi = random_central(rng);
    auto rho0 = DensityMatrix::pure(psi.vector());
    for (int k = 0; k < 100; ++k) {
      const double t = 0.5 * k;
      const Complex r = decoherence_factor(ba, t);
      ASSERT_EQ(r.imag(), 0.0);
      auto lhs = reduced_density(ba, bb, psi, t);
      auto rhs = apply_dephasing(rho0, DephasingFactors{r.real(), r.real()});
      EXPECT_LE(max_abs_diff<4>(lhs.matrix(), rhs.matrix()), 1e-12);
    }
  }
}

TEST(ReducedDensity, B3CentralBlock) {
  auto [ba, bb] = identical_bath(random_bath(20, 10, false));
  auto psi = CentralState::from_vector(bell_vector(BellState::B3));
  for (double t : {0.0, 0.7, 3.0}) {
    const Complex r = decoherence_factor(ba, t);
    auto rho = reduced_density(ba, bb, psi, t);
    EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho(2, 2).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(rho(1, 2) - 0.5 * std::norm(r)), 0.0, 1e-15);
  }
}

TEST(IdenticalBath, CopiesAndNegativeControl) {
  auto spec = random_bath(12, 11, false);
  auto [a, b] = identical_bath(spec);
  ASSERT_EQ(a.spins.size(), spec.spins.size());
  for (std::size_t k = 0; k < spec.spins.size(); ++k) {
    EXPECT_EQ(a.spins[k].alpha, spec.spins[k].alpha);
    EXPECT_EQ(b.spins[k].beta, spec.spins[k].beta);
    EXPECT_EQ(b.spins[k].omega, spec.spins[k].omega);
  }
  auto other = random_bath(12, 12, false);
  bool differs = false;
  for (int k = 0; k <= 50; ++k) {
    const double t = 0.2 * k;
    EXPECT_EQ(decoherence_factor(a, t), decoherence_factor(b, t));
    if (t > 0) differs |= std::abs(decoherence_factor(a, t) - decoherence_factor(other, t)) > 1e-6;
  }
  EXPECT_TRUE(differs);
}

TEST(RandomBath, Properties) {
  auto one = random_bath(1, 0, true);
  ASSERT_EQ(one.spins.size(), 1u);
  EXPECT_EQ(one.spins[0].alpha, Complex(kH));
  EXPECT_EQ(one.spins[0].beta, Complex(kH));
  EXPECT_GE(one.spins[0].omega, 0.0);
  EXPECT_LT(one.spins[0].omega, 1.0);

  auto many = random_bath(100, 1, false);
  EXPECT_NO_THROW(many.validate());
  for (const auto& s : many.spins) EXPECT_NEAR(std::norm(s.alpha) + std::norm(s.beta), 1.0, 1e-12);

  auto eq = random_bath(30, 2, true, {2.0, 3.0});
  for (const auto& s : eq.spins) {
    EXPECT_GE(s.omega, 2.0);
    EXPECT_LT(s.omega, 3.0);
  }
  for (int k = 0; k < 100; ++k) EXPECT_EQ(decoherence_factor(eq, 0.13 * k).imag(), 0.0);
  EXPECT_THROW(random_bath(0, 0, true), std::invalid_argument);
}

TEST(SymmetryTransfer, SpinBathFeedsSymmetryAnalysis) {
  auto [ba, bb] = identical_bath(random_bath(40, 13, true));
  // B1/B2: unit symmetric probability for gamma = |r(t)| at every time
  Rng rng = make_stream(43, 0);
  for (double t : {0.0, 0.5, 2.0, 10.0}) {
    const double g = std::abs(decoherence_factor(ba, t).real());
    UnitaryMixer mixer(haar_unitary<4>(rng));
    EXPECT_NEAR(symmetric_probability(BellState::B1, g, mixer), 1.0, 1e-10);
    EXPECT_NEAR(symmetric_probability(BellState::B2, g, mixer), 1.0, 1e-10);
  }
  // B3: once r(t) has decayed below 1e-6 the asymptotic analysis applies
  double t = 0.0;
  while (std::abs(decoherence_factor(ba, t)) >= 1e-6) t += 0.5;
  const double g = std::abs(decoherence_factor(ba, t));
  EXPECT_NEAR(symmetric_probability(BellState::B3, g, UnitaryMixer::identity()), 0.5, 1e-6);
  auto opt = maximize_symmetric_probability(BellState::B3, g, ConstraintPattern::from_rows({1, 2, 3}),
                                            OptimizeOptions{500, 1, 0});
  EXPECT_NEAR(opt.p_max, 0.5, 1e-6);
}
