#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "exsym/channel.hpp"
#include "exsym/kraus.hpp"
#include "exsym/random.hpp"
#include "exsym/symmetry.hpp"
#include "test_util.hpp"

using namespace exsym;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

Matrix4 projector(int k) {
  Matrix4 m = Matrix4::Zero();
  m(k, k) = 1.0;
  return m;
}

// Row 1 = (0, 0, 1/sqrt2, 1/sqrt2); rows 2..4 are a 3x3 Fourier mix of
// e1, e2 and (e3 - e4)/sqrt2, so each has |u_{mu2}| = 1/sqrt3.
UnitaryMixer one_row_mixer() {
  Matrix4 u = Matrix4::Zero();
  u(0, 2) = kH;
  u(0, 3) = kH;
  Vector4 w[3];
  w[0] = Vector4(1, 0, 0, 0);
  w[1] = Vector4(0, 1, 0, 0);
  w[2] = Vector4(0, 0, kH, -kH);
  for (int k = 0; k < 3; ++k) {
    Vector4 row = Vector4::Zero();
    for (int m = 0; m < 3; ++m) row += std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi * k * m / 3.0) * w[m];
    u.row(k + 1) = row.transpose();
  }
  return UnitaryMixer(u);
}

}  // namespace

TEST(BellStates, Vectors) {
  const Matrix4 s = swap_operator();
  for (auto b : {BellState::B1, BellState::B2, BellState::B3}) {
    EXPECT_LE((s * bell_vector(b) - bell_vector(b)).norm(), 0.0);
    EXPECT_NEAR(bell_vector(b).norm(), 1.0, 1e-15);
  }
  EXPECT_LE((s * bell_vector(BellState::B4) + bell_vector(BellState::B4)).norm(), 0.0);
  EXPECT_EQ(bell_vector(BellState::B3)(1), Complex(kH));
  EXPECT_EQ(parse_bell("b3"), BellState::B3);
  EXPECT_EQ(bell_name(BellState::B2), "B2");
  EXPECT_THROW(parse_bell("B5"), std::invalid_argument);
}

TEST(SwapOperator, Properties) {
  const Matrix4 s = swap_operator();
  EXPECT_TRUE(approx_equal<4>(s * s, Matrix4::Identity(), 0.0));
  const Matrix4 b3 = bell_density(BellState::B3).matrix();
  EXPECT_TRUE(approx_equal<4>(s * b3 * s, b3, 0.0));
  const Matrix4 b4 = bell_density(BellState::B4).matrix();
  EXPECT_TRUE(approx_equal<4>(s * b4 * s, b4, 0.0));
  EXPECT_TRUE(approx_equal<4>(s * projector(1) * s, projector(2), 0.0));
}

TEST(ExchangeSymmetry, Examples) {
  auto b1 = is_exchange_symmetric(bell_density(BellState::B1));
  EXPECT_TRUE(b1.symmetric);
  EXPECT_EQ(b1.asymmetry, 0.0);

  auto p01 = is_exchange_symmetric(DensityMatrix(projector(1)));
  EXPECT_FALSE(p01.symmetric);
  EXPECT_NEAR(p01.asymmetry, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(swap_invariance_defect(projector(1)), std::sqrt(2.0), 1e-15);

  // central-block outcome with r = s is B3 itself; r = 1, s = 0 is |01><01|
  Matrix4 rs = Matrix4::Zero();
  rs.block<2, 2>(1, 1).setConstant(0.5);
  EXPECT_TRUE(is_exchange_symmetric(DensityMatrix(rs)).symmetric);

  // B4 is swap invariant as a density matrix but not exchange symmetric
  auto b4 = bell_density(BellState::B4);
  EXPECT_EQ(swap_invariance_defect(b4.matrix()), 0.0);
  EXPECT_FALSE(is_exchange_symmetric(b4).symmetric);
  EXPECT_NEAR(is_exchange_symmetric(b4).asymmetry, 2.0, 1e-15);
}

TEST(ExchangeSymmetry, PureFormRouteAgrees) {
  Rng rng = make_stream(30, 0);
  for (int k = 0; k < 500; ++k) {
    SymmetricStateForm f{complex_normal(rng), complex_normal(rng), complex_normal(rng)};
    const double n = std::sqrt(std::norm(f.a) + std::norm(f.b) + 2.0 * std::norm(f.c));
    f.a /= n;
    f.b /= n;
    f.c /= n;
    EXPECT_LE(f.normalization_defect(), 1e-12);
    DensityMatrix sym(f.density());
    EXPECT_TRUE(is_exchange_symmetric(sym).symmetric);
    EXPECT_EQ(matches_symmetric_pure_form(sym), std::optional<bool>(true));

    DensityMatrix generic = DensityMatrix::pure(random_state_vector(rng));
    EXPECT_EQ(is_exchange_symmetric(generic).symmetric, *matches_symmetric_pure_form(generic));
    EXPECT_FALSE(is_exchange_symmetric(generic).symmetric);
  }
  for (auto b : {BellState::B1, BellState::B2, BellState::B3, BellState::B4}) {
    auto rho = bell_density(b);
    EXPECT_EQ(is_exchange_symmetric(rho).symmetric, *matches_symmetric_pure_form(rho));
  }
  EXPECT_FALSE(matches_symmetric_pure_form(DensityMatrix::maximally_mixed()).has_value());
}

TEST(OutcomeAnalysis, B1IdentityMixer) {
  for (double g : {0.0, 0.3, 1.0}) {
    auto reports = outcome_analysis(BellState::B1, g, UnitaryMixer::identity());
    ASSERT_EQ(reports.size(), 4u);
    for (const auto& r : reports) {
      if (r.negligible) continue;
      EXPECT_EQ(r.symmetry_class, SymmetryClass::symmetric);
      const Matrix4& m = r.state->matrix();
      EXPECT_EQ((m.block<2, 2>(1, 1).cwiseAbs().maxCoeff()), 0.0);
    }
  }
}

TEST(OutcomeAnalysis, B3AsymptoticIdentityMixer) {
  auto reports = outcome_analysis(BellState::B3, 0.0, UnitaryMixer::identity());
  EXPECT_TRUE(reports[0].negligible);
  EXPECT_NEAR(reports[1].probability, 0.5, 1e-15);
  EXPECT_EQ(reports[1].symmetry_class, SymmetryClass::antisymmetric);
  EXPECT_LE(max_abs_diff<4>(reports[1].state->matrix(), bell_density(BellState::B4).matrix()), 1e-15);
  EXPECT_NEAR(reports[2].probability, 0.25, 1e-15);
  EXPECT_EQ(reports[2].symmetry_class, SymmetryClass::symmetric);
  EXPECT_NEAR(reports[3].probability, 0.25, 1e-15);
  EXPECT_EQ(reports[3].symmetry_class, SymmetryClass::symmetric);
  EXPECT_NEAR(symmetric_probability(BellState::B3, 0.0, UnitaryMixer::identity()), 0.5, 1e-15);
}

TEST(OutcomeAnalysis, B3IdentityChannel) {
  auto reports = outcome_analysis(BellState::B3, 1.0, UnitaryMixer::identity());
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(reports[k].negligible);
  EXPECT_NEAR(reports[3].probability, 1.0, 1e-15);
  EXPECT_EQ(reports[3].symmetry_class, SymmetryClass::symmetric);
}

TEST(OutcomeAnalysis, ClosedFormStatesAgree) {
  Rng rng = make_stream(31, 0);
  for (int k = 0; k < 300; ++k) {
    const double g = (k % 11) / 10.0;
    UnitaryMixer mixer(haar_unitary<4>(rng));
    for (auto b : {BellState::B1, BellState::B2, BellState::B3}) {
      auto reports = outcome_analysis(b, g, mixer);
      for (int mu = 0; mu < 4; ++mu) {
        auto analytic = analytic_outcome_state(b, g, mixer, mu);
        ASSERT_EQ(analytic.has_value(), !reports[mu].negligible);
        if (analytic) EXPECT_LE(max_abs_diff<4>(*analytic, reports[mu].state->matrix()), 1e-12);
      }
    }
  }
  EXPECT_THROW(analytic_outcome_state(BellState::B4, 0.5, UnitaryMixer::identity(), 0),
               std::invalid_argument);
}

TEST(OutcomeAnalysis, ProbabilitiesSumAndDecomposition) {
  Rng rng = make_stream(32, 0);
  for (int k = 0; k < 300; ++k) {
    const double g = (k % 11) / 10.0;
    UnitaryMixer mixer(haar_unitary<4>(rng));
    for (auto b : {BellState::B1, BellState::B2, BellState::B3, BellState::B4}) {
      auto reports = outcome_analysis(b, g, mixer);
      double total = 0.0;
      Matrix4 avg = Matrix4::Zero();
      for (const auto& r : reports) {
        total += r.probability;
        if (r.state) avg += r.probability * r.state->matrix();
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
      auto expected = apply_dephasing(bell_density(b), DephasingFactors{g, g});
      EXPECT_LE(max_abs_diff<4>(avg, expected.matrix()), 1e-12);
    }
  }
}

TEST(OutcomeAnalysis, B1B2AlwaysSymmetric) {
  Rng rng = make_stream(33, 0);
  for (int k = 0; k < 1000; ++k) {
    UnitaryMixer mixer(haar_unitary<4>(rng));
    for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (auto b : {BellState::B1, BellState::B2}) {
        for (const auto& r : outcome_analysis(b, g, mixer)) {
          if (r.probability > 1e-12) EXPECT_LE(r.asymmetry, 1e-10);
        }
        EXPECT_NEAR(symmetric_probability(b, g, mixer), 1.0, 1e-10);
      }
    }
  }
}

TEST(OutcomeAnalysis, B3ClassesUnderDiagonalFreeMixers) {
  // Permutations of the canonical set never combine K2 with K3/K4, so every
  // B3 outcome is symmetric or antisymmetric.
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    Matrix4 p = Matrix4::Zero();
    for (int r = 0; r < 4; ++r) p(r, perm[r]) = 1.0;
    for (int k = 0; k <= 10; ++k) {
      for (const auto& r : outcome_analysis(BellState::B3, k / 10.0, UnitaryMixer(p))) {
        if (!r.negligible) EXPECT_NE(r.symmetry_class, SymmetryClass::mixed);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // A generic mixer does produce outcomes of mixed symmetry.
  Rng rng = make_stream(34, 0);
  bool saw_mixed = false;
  for (const auto& r : outcome_analysis(BellState::B3, 0.0, UnitaryMixer(haar_unitary<4>(rng)))) {
    saw_mixed |= !r.negligible && r.symmetry_class == SymmetryClass::mixed;
  }
  EXPECT_TRUE(saw_mixed);
}

TEST(SymmetricProbability, FiniteTimeIdentityMixer) {
  // K3 and K4 outcomes are symmetric: ((1-g)^2 + (1+g)^2)/4 = (1 + g^2)/2.
  for (int k = 0; k <= 10; ++k) {
    const double g = k / 10.0;
    EXPECT_NEAR(symmetric_probability(BellState::B3, g, UnitaryMixer::identity()), (1 + g * g) / 2, 1e-14);
  }
}

TEST(SymmetricProbability, OneRowExplicitMixer) {
  const auto mixer = one_row_mixer();
  const auto pattern = ConstraintPattern::from_rows({1});
  EXPECT_TRUE(pattern.is_feasible(mixer));
  EXPECT_NEAR(closed_form_symmetric_probability(mixer, pattern), 0.5, 1e-15);
  EXPECT_NEAR(symmetric_probability(BellState::B3, 0.0, mixer), 0.5, 1e-12);
}

TEST(SymmetricProbability, B1AnyMixer) {
  Rng rng = make_stream(35, 0);
  for (double g : {0.0, 0.4, 1.0}) {
    EXPECT_NEAR(symmetric_probability(BellState::B1, g, UnitaryMixer(haar_unitary<4>(rng))), 1.0, 1e-12);
  }
}

TEST(ConstraintPatternTest, Validation) {
  EXPECT_THROW(ConstraintPattern::from_rows({1, 2, 3, 4}), std::invalid_argument);
  EXPECT_THROW(ConstraintPattern::from_rows({0}), std::invalid_argument);
  EXPECT_THROW(ConstraintPattern::from_rows({2, 2}), std::invalid_argument);
  auto p = ConstraintPattern::from_rows({3, 1});
  EXPECT_EQ(p.zeroed_rows, (std::vector<int>{1, 3}));
  EXPECT_EQ(p.free_rows(), (std::vector<int>{2, 4}));
  EXPECT_EQ(feasible_parameter_count(p), 13u);
}

TEST(FeasibleMixer, ExactZerosAndUnitarity) {
  Rng rng = make_stream(36, 0);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const auto& rows : std::vector<std::vector<int>>{{}, {1}, {2}, {4}, {1, 2}, {2, 3}, {1, 2, 3}, {2, 3, 4}}) {
    auto pattern = ConstraintPattern::from_rows(rows);
    for (int k = 0; k < 50; ++k) {
      std::vector<double> x(feasible_parameter_count(pattern));
      for (auto& v : x) v = n(rng);
      auto m = feasible_mixer(pattern, x);
      EXPECT_TRUE(pattern.is_feasible(m, 0.0));
      EXPECT_TRUE(is_unitary<4>(m.matrix(), 1e-12));
      auto r = random_feasible_mixer(pattern, rng);
      EXPECT_TRUE(pattern.is_feasible(r, 0.0));
    }
  }
  EXPECT_THROW(feasible_mixer(ConstraintPattern::from_rows({1}), std::vector<double>(3)),
               std::invalid_argument);
}

TEST(ClosedForms, MatchSymmetricProbability) {
  Rng rng = make_stream(37, 0);
  for (const auto& rows : std::vector<std::vector<int>>{{1}, {1, 2}, {1, 2, 3}, {3}, {2, 4}, {1, 3, 4}}) {
    auto pattern = ConstraintPattern::from_rows(rows);
    for (int k = 0; k < 1000; ++k) {
      auto mixer = random_feasible_mixer(pattern, rng);
      EXPECT_NEAR(symmetric_probability(BellState::B3, 0.0, mixer),
                  closed_form_symmetric_probability(mixer, pattern), 1e-12);
    }
  }
}

TEST(ClosedForms, ThreeRowPatternConstant) {
  Rng rng = make_stream(38, 0);
  auto pattern = ConstraintPattern::from_rows({1, 2, 3});
  for (int k = 0; k < 10000; ++k) {
    auto mixer = random_feasible_mixer(pattern, rng);
    EXPECT_NEAR(symmetric_probability(BellState::B3, 0.0, mixer), 0.5, 1e-12);
  }
}

TEST(Scan, B1ConcentratedAtOne) {
  auto s = brute_force_symmetry_scan(BellState::B1, 0.5, 10000, 1);
  ASSERT_EQ(s.histogram.size(), 1u);
  EXPECT_NEAR(s.histogram[0].bin, 1.0, 1e-15);
  EXPECT_EQ(s.histogram[0].count, 10000u);
}

TEST(Scan, B3BoundAtAsymptote) {
  auto s = brute_force_symmetry_scan(BellState::B3, 0.0, 10000, 2);
  EXPECT_LE(s.max, 0.5 + 1e-9);
  EXPECT_EQ(s.n_samples, 10000u);
}

TEST(Scan, B3IdentityChannel) {
  auto s = brute_force_symmetry_scan(BellState::B3, 1.0, 500, 3);
  EXPECT_NEAR(s.min, 1.0, 1e-12);
  EXPECT_NEAR(s.max, 1.0, 1e-12);
  EXPECT_THROW(brute_force_symmetry_scan(BellState::B3, 1.0, 0, 3), std::invalid_argument);
}

TEST(Optimizer, AttainsHalfForEachPattern) {
  for (const auto& rows : std::vector<std::vector<int>>{{1}, {1, 2}, {1, 2, 3}}) {
    auto res = maximize_symmetric_probability(BellState::B3, 0.0, ConstraintPattern::from_rows(rows),
                                              OptimizeOptions{4000, 4, 11});
    EXPECT_NEAR(res.p_max, 0.5, 1e-6);
    EXPECT_LE(res.p_max, 0.5 + 1e-9);
    EXPECT_TRUE(ConstraintPattern::from_rows(rows).is_feasible(res.argmax));
  }
}

TEST(Optimizer, B1IsOne) {
  auto res = maximize_symmetric_probability(BellState::B1, 0.0, ConstraintPattern{}, OptimizeOptions{200, 1, 0});
  EXPECT_NEAR(res.p_max, 1.0, 1e-12);
}

TEST(Optimizer, ZeroBudgetRejected) {
  EXPECT_THROW(maximize_symmetric_probability(BellState::B3, 0.0, ConstraintPattern{}, OptimizeOptions{0, 1, 0}),
               std::invalid_argument);
}

TEST(Optimizer, AgreesWithFeasibleSampler) {
  auto pattern = ConstraintPattern::from_rows({1});
  auto opt = maximize_symmetric_probability(BellState::B3, 0.0, pattern, OptimizeOptions{4000, 4, 5});
  auto scan = brute_force_symmetry_scan(BellState::B3, 0.0, 1000000, 5, pattern);
  EXPECT_LE(scan.max, opt.p_max + 1e-9);
  EXPECT_NEAR(scan.max, opt.p_max, 1e-3);
}
