#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exsym/kraus.hpp"
#include "exsym/linalg.hpp"
#include "exsym/random.hpp"

namespace exsym {

enum class BellState { B1, B2, B3, B4 };

/// B1 = (|00>+|11>)/sqrt2, B2 = (|00>-|11>)/sqrt2,
/// B3 = (|01>+|10>)/sqrt2, B4 = (|01>-|10>)/sqrt2.
Vector4 bell_vector(BellState which);
DensityMatrix bell_density(BellState which);
std::string_view bell_name(BellState which);
/// Accepts "B1".."B4" (case-insensitive). Throws std::invalid_argument.
BellState parse_bell(std::string_view name);

/// Amplitudes of the general exchange-symmetric pure state a|00> + c|01> +
/// c|10> + b|11>.
struct SymmetricStateForm {
  Complex a, b, c;

  Vector4 vector() const { return Vector4(a, c, c, b); }
  Matrix4 density() const { return vector() * vector().adjoint(); }
  double normalization_defect() const;
};

/// Permutation exchanging |01> and |10>.
Matrix4 swap_operator();

inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kNegligibleProbability = 1e-14;

struct SymmetryCheck {
  bool symmetric;
  double asymmetry;  // ||S rho - rho||_F
};

/// Exchange symmetry means rho is supported on the symmetric subspace
/// (S rho = rho). Note S rho S = rho also holds for the antisymmetric B4
/// projector, so swap invariance alone is not the test.
SymmetryCheck is_exchange_symmetric(const DensityMatrix& rho, double tol = kSymmetryTol);

/// ||S rho S - rho||_F.
double swap_invariance_defect(const Matrix4& rho);

/// Pure-state route: takes the dominant eigenvector psi of rho, reads off
/// (a, c, c', b) and checks that rho equals the symmetric-form density built
/// from (a, b, c) within tol. Returns nullopt when rho is not pure within tol.
std::optional<bool> matches_symmetric_pure_form(const DensityMatrix& rho, double tol = kSymmetryTol);

enum class SymmetryClass { symmetric, antisymmetric, mixed };
std::string_view symmetry_class_name(SymmetryClass c);

struct OutcomeReport {
  int outcome_index = 0;  // 1-based, matches the mixer row
  double probability = 0.0;
  std::optional<DensityMatrix> state;  // empty when probability < 1e-14
  SymmetryClass symmetry_class = SymmetryClass::mixed;
  double asymmetry = 0.0;
  bool negligible = false;
};

/// Outcome states E_mu rho0 E_mu^dagger / p_mu for E = mix_kraus(canonical_kraus(gamma), mixer).
std::vector<OutcomeReport> outcome_analysis(BellState bell, double gamma, const UnitaryMixer& mixer,
                                            double tol = kSymmetryTol);

/// Normalized outcome built from the closed-form amplitudes (e, f) on the
/// |00>,|11> corners for B1/B2, (r, s) on the |01>,|10> block for B3.
/// Returns nullopt when the outcome has zero weight. Throws for B4.
std::optional<Matrix4> analytic_outcome_state(BellState bell, double gamma,
                                              const UnitaryMixer& mixer, int mu);

/// Total probability of outcomes classified symmetric.
double symmetric_probability(BellState bell, double gamma, const UnitaryMixer& mixer,
                             double tol = kSymmetryTol);

/// Mixer rows (1-based) whose second entry u_{mu 2} is forced to zero.
struct ConstraintPattern {
  std::vector<int> zeroed_rows;

  /// Sorts, validates membership in {1..4}, uniqueness and size <= 3.
  static ConstraintPattern from_rows(std::vector<int> rows);
  std::vector<int> free_rows() const;  // complement, 1-based
  bool is_feasible(const UnitaryMixer& mixer, double tol = 0.0) const;
};

/// sum over zeroed rows of |u_{mu3} + u_{mu4}|^2 / 4 (long-time B3 value).
double closed_form_symmetric_probability(const UnitaryMixer& mixer, const ConstraintPattern& pattern);

/// Number of real parameters of the feasible-set parametrization.
std::size_t feasible_parameter_count(const ConstraintPattern& pattern);

/// U = B * P * Y with B = exp(iH) on the free rows (identity on zeroed rows),
/// P exchanging e2 with the first free basis vector, and Y = 1 (+) exp(iH')
/// fixing e2. Every output satisfies u_{mu 2} = 0 exactly on zeroed rows.
UnitaryMixer feasible_mixer(const ConstraintPattern& pattern, const std::vector<double>& params);

/// Same construction with Haar-random blocks; plain Haar for an empty pattern.
UnitaryMixer random_feasible_mixer(const ConstraintPattern& pattern, Rng& rng);

struct HistogramBin {
  double bin;  // bin centre, multiple of 0.01
  std::size_t count;
};

inline constexpr double kHistogramBinWidth = 0.01;

struct ScanSummary {
  std::size_t n_samples = 0;
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  UnitaryMixer argmax = UnitaryMixer::identity();
  std::vector<HistogramBin> histogram;  // non-empty bins, ascending
};

/// Symmetric probability over n_samples mixers drawn by random_feasible_mixer
/// (Haar for the default empty pattern); sample i uses make_stream(seed, i).
ScanSummary brute_force_symmetry_scan(BellState bell, double gamma, std::size_t n_samples,
                                      std::uint64_t seed, const ConstraintPattern& pattern = {});
ScanSummary brute_force_symmetry_scan_serial(BellState bell, double gamma, std::size_t n_samples,
                                             std::uint64_t seed,
                                             const ConstraintPattern& pattern = {});

struct OptimizeOptions {
  std::size_t budget = 4000;  // objective evaluations per restart
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
};

struct OptimizeResult {
  double p_max = 0.0;
  UnitaryMixer argmax = UnitaryMixer::identity();
  std::size_t evaluations = 0;
  std::size_t best_restart = 0;
};

/// Nelder-Mead over feasible_mixer parameters with random restarts (restart
/// k starts from make_stream(seed, k)). Throws for a zero budget.
OptimizeResult maximize_symmetric_probability(BellState bell, double gamma,
                                              const ConstraintPattern& pattern,
                                              const OptimizeOptions& options);
OptimizeResult maximize_symmetric_probability_serial(BellState bell, double gamma,
                                                     const ConstraintPattern& pattern,
                                                     const OptimizeOptions& options);

}  // namespace exsym
