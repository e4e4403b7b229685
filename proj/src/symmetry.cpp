#include "exsym/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "exsym/nelder_mead.hpp"

namespace exsym {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Classified {
  SymmetryClass cls;
  double asymmetry;
};

Classified classify(const Matrix4& state, double tol) {
  const Matrix4 s = swap_operator();
  const double asym = (s * state - state).norm();
  if (asym <= tol) return {SymmetryClass::symmetric, asym};
  if ((s * state + state).norm() <= tol) return {SymmetryClass::antisymmetric, asym};
  return {SymmetryClass::mixed, asym};
}

}  // namespace

Vector4 bell_vector(BellState which) {
  const double h = kInvSqrt2;
  switch (which) {
    case BellState::B1: return Vector4(h, 0.0, 0.0, h);
    case BellState::B2: return Vector4(h, 0.0, 0.0, -h);
    case BellState::B3: return Vector4(0.0, h, h, 0.0);
    case BellState::B4: return Vector4(0.0, h, -h, 0.0);
  }
  throw std::invalid_argument("unknown Bell state");
}

DensityMatrix bell_density(BellState which) {
  Vector4 v = bell_vector(which);
  return DensityMatrix(v * v.adjoint());
}

std::string_view bell_name(BellState which) {
  switch (which) {
    case BellState::B1: return "B1";
    case BellState::B2: return "B2";
    case BellState::B3: return "B3";
    case BellState::B4: return "B4";
  }
  return "?";
}

BellState parse_bell(std::string_view name) {
  std::string upper(name);
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper == "B1") return BellState::B1;
  if (upper == "B2") return BellState::B2;
  if (upper == "B3") return BellState::B3;
  if (upper == "B4") return BellState::B4;
  throw std::invalid_argument("unknown Bell state '" + std::string(name) + "' (expected B1..B4)");
}

double SymmetricStateForm::normalization_defect() const {
  return std::abs(std::norm(a) + 2.0 * std::norm(c) + std::norm(b) - 1.0);
}

Matrix4 swap_operator() {
  Matrix4 s = Matrix4::Zero();
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

SymmetryCheck is_exchange_symmetric(const DensityMatrix& rho, double tol) {
  auto c = classify(rho.matrix(), tol);
  return {c.cls == SymmetryClass::symmetric, c.asymmetry};
}

double swap_invariance_defect(const Matrix4& rho) {
  const Matrix4 s = swap_operator();
  return (s * rho * s - rho).norm();
}

std::optional<bool> matches_symmetric_pure_form(const DensityMatrix& rho, double tol) {
  auto eig = hermitian_eig<4>(rho.matrix());
  if (std::abs(eig.values[0] - 1.0) > tol) return std::nullopt;
  const Vector4 psi = eig.vectors.col(0);
  SymmetricStateForm form{psi(0), psi(3), psi(1)};
  return approx_equal<4>(form.density(), rho.matrix(), tol);
}

std::string_view symmetry_class_name(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::symmetric: return "symmetric";
    case SymmetryClass::antisymmetric: return "antisymmetric";
    case SymmetryClass::mixed: return "mixed";
  }
  return "?";
}

std::vector<OutcomeReport> outcome_analysis(BellState bell, double gamma, const UnitaryMixer& mixer,
                                            double tol) {
  const KrausSet set = mix_kraus(canonical_kraus(gamma), mixer);
  const Matrix4 rho0 = bell_density(bell).matrix();
  std::vector<OutcomeReport> out;
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix4& e = set.operators[mu];
    Matrix4 unnorm = e * rho0 * e.adjoint();
    OutcomeReport rep;
    rep.outcome_index = mu + 1;
    rep.probability = unnorm.trace().real();
    if (rep.probability < kNegligibleProbability) {
      rep.negligible = true;
    } else {
      Matrix4 state = unnorm / rep.probability;
      auto c = classify(state, tol);
      rep.symmetry_class = c.cls;
      rep.asymmetry = c.asymmetry;
      rep.state = DensityMatrix(state);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::optional<Matrix4> analytic_outcome_state(BellState bell, double gamma,
                                              const UnitaryMixer& mixer, int mu) {
  const auto d = mixed_kraus_diagonal(KrausFactors::from_gamma(gamma), mixer, mu);
  Complex x, y;
  int i, j;
  double sign = 1.0;
  switch (bell) {
    case BellState::B1:
    case BellState::B2:
      x = d[0];  // e
      y = d[3];  // f
      i = 0;
      j = 3;
      sign = bell == BellState::B1 ? 1.0 : -1.0;
      break;
    case BellState::B3:
      x = d[1];  // r
      y = d[2];  // s
      i = 1;
      j = 2;
      break;
    default:
      throw std::invalid_argument("analytic_outcome_state: B4 is not covered");
  }
  const double weight = std::norm(x) + std::norm(y);
  if (weight / 2.0 < kNegligibleProbability) return std::nullopt;
  Matrix4 m = Matrix4::Zero();
  m(i, i) = std::norm(x) / weight;
  m(j, j) = std::norm(y) / weight;
  m(i, j) = sign * x * std::conj(y) / weight;
  m(j, i) = sign * std::conj(x) * y / weight;
  return m;
}

double symmetric_probability(BellState bell, double gamma, const UnitaryMixer& mixer, double tol) {
  const KrausSet set = mix_kraus(canonical_kraus(gamma), mixer);
  const Matrix4 rho0 = bell_density(bell).matrix();
  double total = 0.0;
  for (const auto& e : set.operators) {
    Matrix4 unnorm = e * rho0 * e.adjoint();
    double p = unnorm.trace().real();
    if (p < kNegligibleProbability) continue;
    if (classify(unnorm / p, tol).cls == SymmetryClass::symmetric) total += p;
  }
  return total;
}

ConstraintPattern ConstraintPattern::from_rows(std::vector<int> rows) {
  std::sort(rows.begin(), rows.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
    throw std::invalid_argument("constraint pattern has repeated rows");
  }
  for (int r : rows) {
    if (r < 1 || r > 4) throw std::invalid_argument("constraint pattern rows must lie in 1..4");
  }
  if (rows.size() > 3) {
    throw std::invalid_argument(
        "constraint pattern infeasible: column 2 of a unitary cannot vanish on all four rows");
  }
  return ConstraintPattern{std::move(rows)};
}

std::vector<int> ConstraintPattern::free_rows() const {
  std::vector<int> out;
  for (int r = 1; r <= 4; ++r) {
    if (std::find(zeroed_rows.begin(), zeroed_rows.end(), r) == zeroed_rows.end()) out.push_back(r);
  }
  return out;
}

bool ConstraintPattern::is_feasible(const UnitaryMixer& mixer, double tol) const {
  return std::all_of(zeroed_rows.begin(), zeroed_rows.end(),
                     [&](int r) { return std::abs(mixer(r - 1, 1)) <= tol; });
}

double closed_form_symmetric_probability(const UnitaryMixer& mixer,
                                         const ConstraintPattern& pattern) {
  double p = 0.0;
  for (int r : pattern.zeroed_rows) p += 0.25 * std::norm(mixer(r - 1, 2) + mixer(r - 1, 3));
  return p;
}

namespace {

template <int N>
Matrix<N> hermitian_from_params(const double* p) {
  Matrix<N> h;
  int k = 0;
  for (int i = 0; i < N; ++i) h(i, i) = p[k++];
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      h(i, j) = Complex(p[k], p[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

template <int N>
Eigen::MatrixXcd param_block(const double* p) {
  return unitary_exp<N>(hermitian_from_params<N>(p));
}

Eigen::MatrixXcd param_block(int n, const double* p) {
  switch (n) {
    case 1: return param_block<1>(p);
    case 2: return param_block<2>(p);
    case 3: return param_block<3>(p);
    case 4: return param_block<4>(p);
  }
  throw std::invalid_argument("block size out of range");
}

Eigen::MatrixXcd haar_block(int n, Rng& rng) {
  switch (n) {
    case 1: return haar_unitary<1>(rng);
    case 2: return haar_unitary<2>(rng);
    case 3: return haar_unitary<3>(rng);
    case 4: return haar_unitary<4>(rng);
  }
  throw std::invalid_argument("block size out of range");
}

// Assembles B * P * Y from a block on the free rows and a 3x3 block acting on
// basis vectors {e1, e3, e4}. Entries in zeroed rows of column 2 are never
// written, so they are exact zeros.
UnitaryMixer assemble_feasible(const std::vector<int>& free_rows, const Eigen::MatrixXcd& free_block,
                               const Eigen::MatrixXcd& stabilizer) {
  const int nf = static_cast<int>(free_rows.size());
  Matrix4 b = Matrix4::Identity();
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) b(free_rows[i] - 1, free_rows[j] - 1) = free_block(i, j);

  Matrix4 perm = Matrix4::Identity();
  const int c0 = free_rows.front() - 1;
  if (c0 != 1) {
    perm(1, 1) = perm(c0, c0) = 0.0;
    perm(1, c0) = perm(c0, 1) = 1.0;
  }

  Matrix4 y = Matrix4::Zero();
  y(1, 1) = 1.0;
  const int others[3] = {0, 2, 3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y(others[i], others[j]) = stabilizer(i, j);

  return UnitaryMixer(b * perm * y);
}

}  // namespace

std::size_t feasible_parameter_count(const ConstraintPattern& pattern) {
  const std::size_t nf = pattern.free_rows().size();
  return nf * nf + 9;
}

UnitaryMixer feasible_mixer(const ConstraintPattern& pattern, const std::vector<double>& params) {
  const auto free = pattern.free_rows();
  const int nf = static_cast<int>(free.size());
  if (params.size() != feasible_parameter_count(pattern)) {
    throw std::invalid_argument("feasible_mixer: wrong parameter count");
  }
  return assemble_feasible(free, param_block(nf, params.data()),
                           param_block(3, params.data() + nf * nf));
}

UnitaryMixer random_feasible_mixer(const ConstraintPattern& pattern, Rng& rng) {
  if (pattern.zeroed_rows.empty()) return UnitaryMixer(haar_unitary<4>(rng));
  const auto free = pattern.free_rows();
  auto block = haar_block(static_cast<int>(free.size()), rng);
  auto stab = haar_block(3, rng);
  return assemble_feasible(free, block, stab);
}

namespace {

struct Sample {
  double p;
  Matrix4 u;
};

Sample draw_sample(BellState bell, double gamma, std::uint64_t seed, std::size_t i,
                   const ConstraintPattern& pattern) {
  Rng rng = make_stream(seed, i);
  UnitaryMixer m = random_feasible_mixer(pattern, rng);
  return {symmetric_probability(bell, gamma, m), m.matrix()};
}

ScanSummary summarize(const std::vector<Sample>& samples) {
  ScanSummary s;
  s.n_samples = samples.size();
  std::size_t arg = 0;
  double sum = 0.0;
  s.max = s.min = samples.front().p;
  std::map<long, std::size_t> bins;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double p = samples[i].p;
    sum += p;
    if (p > s.max) {
      s.max = p;
      arg = i;
    }
    s.min = std::min(s.min, p);
    ++bins[std::lround(p / kHistogramBinWidth)];
  }
  s.mean = sum / static_cast<double>(samples.size());
  s.argmax = UnitaryMixer(samples[arg].u);
  for (auto [k, count] : bins) s.histogram.push_back({static_cast<double>(k) * kHistogramBinWidth, count});
  return s;
}

void check_scan_args(double gamma, std::size_t n) {
  if (n == 0) throw std::invalid_argument("scan needs at least one sample");
  KrausFactors::from_gamma(gamma);
}

}  // namespace

ScanSummary brute_force_symmetry_scan(BellState bell, double gamma, std::size_t n_samples,
                                      std::uint64_t seed, const ConstraintPattern& pattern) {
  check_scan_args(gamma, n_samples);
  std::vector<Sample> samples(n_samples);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_samples); ++i) {
    samples[i] = draw_sample(bell, gamma, seed, static_cast<std::size_t>(i), pattern);
  }
  return summarize(samples);
}

ScanSummary brute_force_symmetry_scan_serial(BellState bell, double gamma, std::size_t n_samples,
                                             std::uint64_t seed, const ConstraintPattern& pattern) {
  check_scan_args(gamma, n_samples);
  std::vector<Sample> samples;
  samples.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    samples.push_back(draw_sample(bell, gamma, seed, i, pattern));
  }
  return summarize(samples);
}

namespace {

struct RestartResult {
  double p;
  std::vector<double> x;
  std::size_t evaluations;
};

RestartResult run_restart(BellState bell, double gamma, const ConstraintPattern& pattern,
                          const OptimizeOptions& options, std::size_t k) {
  Rng rng = make_stream(options.seed, k);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x0(feasible_parameter_count(pattern));
  for (auto& v : x0) v = n(rng);
  auto objective = [&](const std::vector<double>& x) {
    return -symmetric_probability(bell, gamma, feasible_mixer(pattern, x));
  };
  auto res = nelder_mead(objective, std::move(x0), 0.5, options.budget);
  return {-res.value, std::move(res.x), res.evaluations};
}

OptimizeResult pick_best(const std::vector<RestartResult>& runs, const ConstraintPattern& pattern) {
  std::size_t best = 0, evals = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    evals += runs[k].evaluations;
    if (runs[k].p > runs[best].p) best = k;
  }
  return {runs[best].p, feasible_mixer(pattern, runs[best].x), evals, best};
}

void check_optimize_args(double gamma, const OptimizeOptions& options) {
  if (options.budget == 0) throw std::invalid_argument("optimizer budget must be >= 1");
  if (options.restarts == 0) throw std::invalid_argument("optimizer needs at least one restart");
  KrausFactors::from_gamma(gamma);
}

}  // namespace

OptimizeResult maximize_symmetric_probability(BellState bell, double gamma,
                                              const ConstraintPattern& pattern,
                                              const OptimizeOptions& options) {
  check_optimize_args(gamma, options);
  std::vector<RestartResult> runs(options.restarts);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(options.restarts); ++k) {
    runs[k] = run_restart(bell, gamma, pattern, options, static_cast<std::size_t>(k));
  }
  return pick_best(runs, pattern);
}

OptimizeResult maximize_symmetric_probability_serial(BellState bell, double gamma,
                                                     const ConstraintPattern& pattern,
                                                     const OptimizeOptions& options) {
  check_optimize_args(gamma, options);
  std::vector<RestartResult> runs;
  for (std::size_t k = 0; k < options.restarts; ++k) {
    runs.push_back(run_restart(bell, gamma, pattern, options, k));
  }
  return pick_best(runs, pattern);
}

}  // namespace exsym
