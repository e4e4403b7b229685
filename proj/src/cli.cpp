#include "exsym/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "exsym/channel.hpp"
#include "exsym/io.hpp"
#include "exsym/kraus.hpp"
#include "exsym/random.hpp"
#include "exsym/spinbath.hpp"
#include "exsym/symmetry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exsym::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kSchemaVersion = "1";

struct Global {
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
  int threads = 0;
};

struct TimeGrid {
  double start = 0.0;
  double end = 1.0;
  std::size_t points = 11;

  std::vector<double> values() const {
    if (points == 0) throw std::invalid_argument("time grid needs at least one point");
    if (!(start >= 0.0) || !(end >= start)) throw std::invalid_argument("time grid must satisfy 0 <= start <= end");
    std::vector<double> t(points);
    for (std::size_t k = 0; k < points; ++k) {
      t[k] = points == 1 ? start
                         : start + (end - start) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return t;
  }
};

void add_grid_options(CLI::App* sub, TimeGrid& grid) {
  sub->add_option("--t-start", grid.start, "first time point")->capture_default_str();
  sub->add_option("--t-end", grid.end, "last time point")->capture_default_str();
  sub->add_option("--points", grid.points, "number of time points")->capture_default_str();
}

std::string entry_header() {
  std::string h;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      h += ",re_" + std::to_string(i) + std::to_string(j);
      h += ",im_" + std::to_string(i) + std::to_string(j);
    }
  return h;
}

std::string entry_row(const Matrix4& m) {
  std::string r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r += "," + format_double(m(i, j).real()) + "," + format_double(m(i, j).imag());
  return r;
}

std::string resolve_format(const std::string& requested, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  std::string f = requested.empty() ? fallback : requested;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw std::invalid_argument("output format '" + f + "' not supported by this command");
}

ConstraintPattern parse_pattern(const std::vector<int>& rows) { return ConstraintPattern::from_rows(rows); }

DensityMatrix initial_state(const std::string& name) {
  if (name == "plus" || name == "PLUS") {
    return DensityMatrix::pure(Vector4(0.5, 0.5, 0.5, 0.5));
  }
  return bell_density(parse_bell(name));
}

json scan_summary_json(const ScanSummary& s) {
  return {{"n_samples", s.n_samples}, {"max", s.max}, {"min", s.min}, {"mean", s.mean}};
}

// ----- evolve --------------------------------------------------------------

struct EvolveArgs {
  std::string state = "B1";
  double rate = 1.0;
  std::optional<double> rate_b;
  TimeGrid grid;
};

std::string cmd_evolve(const Global& g, const EvolveArgs& a) {
  const auto fmt = resolve_format(g.format, "csv", {"csv", "json"});
  const DensityMatrix rho0 = initial_state(a.state);
  const double rate_b = a.rate_b.value_or(a.rate);
  const bool split = a.rate_b.has_value();
  std::ostringstream os;
  json rows = json::array();
  if (fmt == "csv") {
    os << "t,gamma" << (split ? ",gamma_b" : "") << entry_header() << '\n';
  }
  for (double t : a.grid.values()) {
    ChannelParams p{a.rate, rate_b, t};
    auto f = dephasing_factors(p);
    DensityMatrix rho = apply_dephasing(rho0, p);
    if (fmt == "csv") {
      os << format_double(t) << ',' << format_double(f.a);
      if (split) os << ',' << format_double(f.b);
      os << entry_row(rho.matrix()) << '\n';
    } else {
      rows.push_back({{"t", t}, {"gamma", f.a}, {"gamma_b", f.b}, {"rho", matrix_to_json(rho.matrix())}});
    }
  }
  if (fmt == "json") {
    json doc = {{"schema", "timeseries"},
                {"version", kSchemaVersion},
                {"command", "evolve"},
                {"state", a.state},
                {"rate_a", a.rate},
                {"rate_b", rate_b},
                {"rows", rows}};
    return doc.dump(2) + "\n";
  }
  return os.str();
}

// ----- kraus ---------------------------------------------------------------

struct KrausArgs {
  std::optional<double> gamma;
  std::optional<double> rate;
  std::optional<double> time;
  std::string source = "canonical";
  bool mix = false;
};

std::string cmd_kraus(const Global& g, const KrausArgs& a) {
  resolve_format(g.format, "json", {"json"});
  double gamma;
  if (a.gamma) {
    gamma = *a.gamma;
  } else if (a.rate && a.time) {
    gamma = gamma_factor(*a.rate, *a.time);
  } else {
    throw std::invalid_argument("kraus: give --gamma or both --rate and --time");
  }
  KrausFactors::from_gamma(gamma);
  KrausSet set;
  if (a.source == "canonical") {
    set = canonical_kraus(gamma);
  } else if (a.source == "choi") {
    set = kraus_from_choi(choi_of_factors({gamma, gamma}));
    set.gamma = gamma;
  } else {
    throw std::invalid_argument("kraus: --source must be canonical or choi");
  }
  if (a.mix) {
    if (set.operators.size() != 4) {
      throw std::invalid_argument("kraus: --mix needs a four-operator set (rank " +
                                  std::to_string(set.operators.size()) + " here)");
    }
    Rng rng = make_stream(g.seed, 0);
    set = mix_kraus(set, UnitaryMixer(haar_unitary<4>(rng)));
  }
  const double residual = completeness_residual(set);
  if (residual > kCompletenessTol) {
    throw NumericalError("kraus: completeness residual " + format_double(residual));
  }
  json doc = kraus_to_json(set);
  doc["completeness_residual"] = residual;
  return doc.dump(2) + "\n";
}

// ----- symmetry-scan / optimize --------------------------------------------

struct ScanArgs {
  std::string state = "B3";
  double gamma = 0.0;
  std::size_t samples = 10000;
  std::vector<int> pattern;
};

json scan_report(const ScanArgs& a, const ConstraintPattern& pattern, const ScanSummary& s,
                 std::uint64_t seed) {
  return {{"schema", "scan_report"},
          {"version", kSchemaVersion},
          {"command", "symmetry-scan"},
          {"state", std::string(bell_name(parse_bell(a.state)))},
          {"gamma", a.gamma},
          {"pattern", pattern_to_json(pattern)},
          {"seed", seed},
          {"p_max", s.max},
          {"mixer", matrix_to_json(s.argmax.matrix())},
          {"scan", scan_summary_json(s)},
          {"histogram", histogram_to_json(s.histogram)}};
}

std::string cmd_scan(const Global& g, const ScanArgs& a) {
  resolve_format(g.format, "json", {"json"});
  const auto pattern = parse_pattern(a.pattern);
  const auto s = brute_force_symmetry_scan(parse_bell(a.state), a.gamma, a.samples, g.seed, pattern);
  return scan_report(a, pattern, s, g.seed).dump(2) + "\n";
}

struct OptimizeArgs {
  ScanArgs scan{"B3", 0.0, 100000, {}};
  std::size_t budget = 4000;
  std::size_t restarts = 8;
  double agreement_tol = 1e-3;
};

std::string cmd_optimize(const Global& g, const OptimizeArgs& a) {
  resolve_format(g.format, "json", {"json"});
  const auto pattern = parse_pattern(a.scan.pattern);
  const BellState bell = parse_bell(a.scan.state);
  const auto opt = maximize_symmetric_probability(bell, a.scan.gamma, pattern,
                                                  {a.budget, a.restarts, g.seed});
  const auto s = brute_force_symmetry_scan(bell, a.scan.gamma, a.scan.samples, g.seed, pattern);
  const bool agree = std::abs(opt.p_max - s.max) <= a.agreement_tol && s.max <= opt.p_max + 1e-9;
  json doc = scan_report(a.scan, pattern, s, g.seed);
  doc["command"] = "optimize";
  doc["p_max"] = opt.p_max;
  doc["mixer"] = matrix_to_json(opt.argmax.matrix());
  doc["optimizer"] = {{"evaluations", opt.evaluations},
                      {"restarts", a.restarts},
                      {"budget", a.budget},
                      {"best_restart", opt.best_restart}};
  doc["agreement"] = agree;
  doc["agreement_tol"] = a.agreement_tol;
  return doc.dump(2) + "\n";
}

// ----- spinbath ------------------------------------------------------------

struct SpinbathArgs {
  std::string bath_file;
  std::string bath_b_file;
  std::size_t n_spins = 20;
  bool equal_amplitudes = false;
  RandomBathOptions omega;
  std::string state;
  std::string save_bath;
  TimeGrid grid{0.0, 50.0, 101};
};

std::string cmd_spinbath(const Global& g, const SpinbathArgs& a) {
  const auto fmt = resolve_format(g.format, "csv", {"csv", "json"});
  BathSpec bath_a = a.bath_file.empty()
                        ? random_bath(a.n_spins, g.seed, a.equal_amplitudes, a.omega)
                        : load_bath_file(a.bath_file);
  const bool split = !a.bath_b_file.empty();
  BathSpec bath_b = split ? load_bath_file(a.bath_b_file) : identical_bath(bath_a).second;
  if (!a.save_bath.empty()) save_json_file(a.save_bath, bath_to_json(bath_a));

  std::optional<CentralState> psi0;
  if (!a.state.empty()) psi0 = CentralState::from_vector(bell_vector(parse_bell(a.state)));

  std::ostringstream os;
  json rows = json::array();
  if (fmt == "csv") {
    os << "t,re_r,im_r,abs_r";
    if (split) os << ",re_r2,im_r2,abs_r2";
    if (psi0) os << entry_header();
    os << '\n';
  }
  for (double t : a.grid.values()) {
    const Complex r = decoherence_factor(bath_a, t);
    const Complex r2 = decoherence_factor(bath_b, t);
    std::optional<DensityMatrix> rho;
    if (psi0) rho = reduced_density(bath_a, bath_b, *psi0, t);
    if (fmt == "csv") {
      os << format_double(t) << ',' << format_double(r.real()) << ',' << format_double(r.imag()) << ','
         << format_double(std::abs(r));
      if (split) {
        os << ',' << format_double(r2.real()) << ',' << format_double(r2.imag()) << ','
           << format_double(std::abs(r2));
      }
      if (rho) os << entry_row(rho->matrix());
      os << '\n';
    } else {
      json row = {{"t", t}, {"r", complex_to_json(r)}, {"r2", complex_to_json(r2)}};
      if (rho) row["rho"] = matrix_to_json(rho->matrix());
      rows.push_back(row);
    }
  }
  if (fmt == "json") {
    json doc = {{"schema", "timeseries"},
                {"version", kSchemaVersion},
                {"command", "spinbath"},
                {"bath", bath_to_json(bath_a)},
                {"rows", rows}};
    if (psi0) doc["state"] = a.state;
    return doc.dump(2) + "\n";
  }
  return os.str();
}

// ----- montecarlo ----------------------------------------------------------

struct MonteCarloArgs {
  std::string state = "plus";
  double rate = 1.0;
  std::optional<double> rate_b;
  double time = 1.0;
  NoiseTrajectoryConfig cfg;
};

std::string cmd_montecarlo(const Global& g, const MonteCarloArgs& a) {
  const auto fmt = resolve_format(g.format, "json", {"json", "csv"});
  const DensityMatrix rho0 = initial_state(a.state);
  const ChannelParams params{a.rate, a.rate_b.value_or(a.rate), a.time};
  NoiseTrajectoryConfig cfg = a.cfg;
  cfg.seed = g.seed;
  const auto mc = monte_carlo_dephasing(rho0, params, cfg);
  const DensityMatrix exact = apply_dephasing(rho0, params);

  double max_z = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex d = mc.rho(i, j) - exact(i, j);
      const Complex se = mc.entry_stderr(i, j);
      if (se.real() > 0.0) max_z = std::max(max_z, std::abs(d.real()) / se.real());
      if (se.imag() > 0.0) max_z = std::max(max_z, std::abs(d.imag()) / se.imag());
    }

  if (fmt == "csv") {
    std::ostringstream os;
    os << "i,j,est_re,est_im,exact_re,exact_im,stderr_re,stderr_im\n";
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        os << i + 1 << ',' << j + 1 << ',' << format_double(mc.rho(i, j).real()) << ','
           << format_double(mc.rho(i, j).imag()) << ',' << format_double(exact(i, j).real()) << ','
           << format_double(exact(i, j).imag()) << ',' << format_double(mc.entry_stderr(i, j).real())
           << ',' << format_double(mc.entry_stderr(i, j).imag()) << '\n';
      }
    return os.str();
  }
  json doc = {{"schema", "montecarlo_report"},
              {"version", kSchemaVersion},
              {"command", "montecarlo"},
              {"state", a.state},
              {"rate_a", params.rate_a},
              {"rate_b", params.rate_b},
              {"time", params.time},
              {"n_trajectories", cfg.n_trajectories},
              {"dt", cfg.dt},
              {"mu", cfg.mu},
              {"seed", g.seed},
              {"n_steps", mc.n_steps},
              {"rho_est", matrix_to_json(mc.rho.matrix())},
              {"rho_analytic", matrix_to_json(exact.matrix())},
              {"stderr", matrix_to_json(mc.entry_stderr)},
              {"stderr_max", mc.stderr_max},
              {"max_z", max_z}};
  return doc.dump(2) + "\n";
}

void emit(const Global& g, const std::string& text, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + g.output);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit dephasing, Kraus decompositions and exchange-symmetry analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for every stochastic command")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", g.output, "output file (default stdout)");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)");

  std::function<std::string()> action;

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "density matrix under the analytic dephasing channel");
  evolve->add_option("--state", ev.state, "B1..B4 or plus")->capture_default_str();
  evolve->add_option("--rate", ev.rate, "dephasing rate (both qubits unless --rate-b)")->capture_default_str();
  evolve->add_option("--rate-b", ev.rate_b, "dephasing rate of the second qubit");
  add_grid_options(evolve, ev.grid);
  evolve->callback([&] { action = [&] { return cmd_evolve(g, ev); }; });

  KrausArgs kr;
  auto* kraus = app.add_subcommand("kraus", "emit a Kraus set as JSON");
  kraus->add_option("--gamma", kr.gamma, "decay factor in [0, 1]");
  kraus->add_option("--rate", kr.rate, "dephasing rate");
  kraus->add_option("--time", kr.time, "evaluation time");
  kraus->add_option("--source", kr.source, "canonical or choi")->capture_default_str();
  kraus->add_flag("--mix", kr.mix, "remix with a Haar-random unitary drawn from --seed");
  kraus->callback([&] { action = [&] { return cmd_kraus(g, kr); }; });

  ScanArgs sc;
  auto* scan = app.add_subcommand("symmetry-scan", "sample mixers and histogram the symmetric probability");
  scan->add_option("--state", sc.state)->capture_default_str();
  scan->add_option("--gamma", sc.gamma)->capture_default_str();
  scan->add_option("--samples", sc.samples)->capture_default_str();
  scan->add_option("--pattern", sc.pattern, "rows with u_{mu2}=0 (e.g. 1,2,3)")->delimiter(',');
  scan->callback([&] { action = [&] { return cmd_scan(g, sc); }; });

  OptimizeArgs op;
  auto* optimize = app.add_subcommand("optimize", "maximize the symmetric probability over mixers");
  optimize->add_option("--state", op.scan.state)->capture_default_str();
  optimize->add_option("--gamma", op.scan.gamma)->capture_default_str();
  optimize->add_option("--pattern", op.scan.pattern, "rows with u_{mu2}=0 (e.g. 1,2,3)")->delimiter(',');
  optimize->add_option("--budget", op.budget, "objective evaluations per restart")->capture_default_str();
  optimize->add_option("--restarts", op.restarts)->capture_default_str();
  optimize->add_option("--samples", op.scan.samples, "sampler oracle size")->capture_default_str();
  optimize->add_option("--agreement-tol", op.agreement_tol)->capture_default_str();
  optimize->callback([&] { action = [&] { return cmd_optimize(g, op); }; });

  SpinbathArgs sb;
  auto* spin = app.add_subcommand("spinbath", "central-spin decoherence factor time series");
  spin->add_option("--bath", sb.bath_file, "bath JSON file (default: random bath)");
  spin->add_option("--bath-b", sb.bath_b_file, "second bath file (default: identical to --bath)");
  spin->add_option("--n-spins", sb.n_spins, "spins in the random bath")->capture_default_str();
  spin->add_flag("--equal-amplitudes", sb.equal_amplitudes, "alpha_k = beta_k = 1/sqrt2");
  spin->add_option("--omega-min", sb.omega.omega_min)->capture_default_str();
  spin->add_option("--omega-max", sb.omega.omega_max)->capture_default_str();
  spin->add_option("--state", sb.state, "also emit the reduced density of this Bell state");
  spin->add_option("--save-bath", sb.save_bath, "write the bath used to this JSON file");
  add_grid_options(spin, sb.grid);
  spin->callback([&] { action = [&] { return cmd_spinbath(g, sb); }; });

  MonteCarloArgs mc;
  auto* monte = app.add_subcommand("montecarlo", "trajectory average over stochastic noise fields");
  monte->add_option("--state", mc.state, "B1..B4 or plus")->capture_default_str();
  monte->add_option("--rate", mc.rate)->capture_default_str();
  monte->add_option("--rate-b", mc.rate_b);
  monte->add_option("--time", mc.time)->capture_default_str();
  monte->add_option("--trajectories", mc.cfg.n_trajectories)->capture_default_str();
  monte->add_option("--dt", mc.cfg.dt)->capture_default_str();
  monte->add_option("--mu", mc.cfg.mu, "gyromagnetic ratio")->capture_default_str();
  monte->callback([&] { action = [&] { return cmd_montecarlo(g, mc); }; });

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    emit(g, action(), out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputFile;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace exsym::cli
