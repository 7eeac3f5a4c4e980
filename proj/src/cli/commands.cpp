#include "wdd/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wdd/cli/config.hpp"
#include "wdd/cli/selfcheck.hpp"
#include "wdd/cli/worker_pool.hpp"
#include "wdd/csv.hpp"
#include "wdd/error.hpp"
#include "wdd/rng.hpp"

namespace wdd::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string db(double v) { return fmt("%.4f", v); }

double parse_snr(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "none") return std::numeric_limits<double>::infinity();
  return csv::parse_double(s);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Flags shared by simulate, sweep and recover.
struct RawOptions {
  std::string alg = "alg1";
  std::string mask = "exp";
  std::string solver = "pinv";
  std::string alpha0 = "lcurve";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> mask_seed;
  std::size_t threads = 0;
};

void add_sizes(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--d", cfg.d, "Signal length")->capture_default_str();
  sub->add_option("--rho", cfg.rho, "Fourier support of a bandlimited mask")->capture_default_str();
  sub->add_option("--delta", cfg.delta, "Spatial support of a compact mask")->capture_default_str();
  sub->add_option("--gamma", cfg.gamma, "Fourier support of the signal (alg2)")->capture_default_str();
  sub->add_option("--kappa", cfg.kappa, "Band half-width (derived when 0)");
  sub->add_option("--K", cfg.K, "Frequency samples (derived when 0)");
  sub->add_option("--L", cfg.L, "Shift samples (derived when 0)");
}

void add_algorithm(CLI::App* sub, ExperimentConfig& cfg, RawOptions& raw) {
  sub->add_option("--alg", raw.alg, "alg1 | alg2 | compact | hioer")->capture_default_str();
  sub->add_option("--solver", raw.solver, "alg2 solver: pinv | tikhonov")->capture_default_str();
  sub->add_option("--q", cfg.q, "Tikhonov decay factor")->capture_default_str();
  sub->add_option("--N", cfg.tikhonov_iterations, "Tikhonov iterations")->capture_default_str();
  sub->add_option("--alpha0", raw.alpha0, "Initial Tikhonov parameter or 'lcurve'")->capture_default_str();
}

void apply_algorithm(ExperimentConfig& cfg, const RawOptions& raw) {
  cfg.algorithm = parse_algorithm(raw.alg);
  if (raw.solver == "pinv") {
    cfg.solver = Alg2Solver::Pinv;
  } else if (raw.solver == "tikhonov") {
    cfg.solver = Alg2Solver::Tikhonov;
  } else {
    throw Error(ErrorKind::Parse, "unknown solver '" + raw.solver + "' (pinv, tikhonov)");
  }
  if (raw.alpha0 == "lcurve") {
    cfg.alpha0.reset();
  } else {
    cfg.alpha0 = csv::parse_double(raw.alpha0);
  }
}

void apply_mask(ExperimentConfig& cfg, const RawOptions& raw) {
  if (raw.mask == "exp") {
    cfg.mask.reset();
  } else {
    cfg.mask = parse_mask_kind(raw.mask);
  }
  cfg.mask_seed = raw.mask_seed;
}

std::uint64_t seed_or_entropy(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  const std::uint64_t s = entropy_seed();
  err << "seed=" << s << "\n";
  return s;
}

std::string report_header() { return "algorithm,d,K,L,error_db,runtime_s"; }

std::string report_line(const RecoveryResult& r, const MeasurementSet& y) {
  std::string line = r.algorithm + "," + std::to_string(y.d) + "," + std::to_string(y.K) + "," + std::to_string(y.L) + ",";
  if (r.error_db) line += db(*r.error_db);
  line += "," + fmt("%.6f", r.runtime_seconds);
  return line;
}

int cmd_simulate(ExperimentConfig cfg, const RawOptions& raw, const std::string& snr, const std::string& prefix,
                 std::ostream& out, std::ostream& err) {
  apply_algorithm(cfg, raw);
  apply_mask(cfg, raw);
  cfg.resolve();
  const double snr_db = parse_snr(snr);
  const std::uint64_t seed = seed_or_entropy(raw.seed, err);
  const Mask m = build_mask(cfg, seed);
  const Trial t = make_trial(cfg, m, seed, snr_db);

  const std::string meas = prefix + ".meas.csv";
  const std::string truth = prefix + ".truth.csv";
  const std::string mask = prefix + ".mask.csv";
  write_measurements_file(meas, t.y);
  csv::write_vector_file(truth, t.truth,
                         {{"algorithm", to_string(cfg.algorithm)},
                          {"seed", std::to_string(seed)},
                          {"signal_seed", std::to_string(derive_seed(seed, 1))}});
  write_mask_file(mask, m);
  out << meas << "\n" << truth << "\n" << mask << "\n";
  return 0;
}

int cmd_recover(ExperimentConfig cfg, const RawOptions& raw, const std::string& meas_path,
                const std::string& mask_path, const std::string& truth_path, std::string out_path,
                std::ostream& out) {
  apply_algorithm(cfg, raw);
  const MeasurementSet y = read_measurements_file(meas_path);
  const Mask m = read_mask_file(mask_path);
  std::optional<ComplexVector> truth;
  if (!truth_path.empty()) truth = csv::read_vector_file(truth_path);
  cfg.d = y.d;
  cfg.K = y.K;
  cfg.L = y.L;
  if (cfg.algorithm == Algorithm::Alg2) cfg.gamma = (y.L + 1) / 2;
  const RecoveryResult r = run_algorithm(cfg.algorithm, cfg, y, m, truth);
  if (out_path.empty()) out_path = std::filesystem::path(meas_path).replace_extension("").string() + ".estimate.csv";
  csv::write_vector_file(out_path, r.x_e, {{"algorithm", r.algorithm}});
  out << report_header() << "\n" << report_line(r, y) << "\n";
  return 0;
}

int cmd_sweep(ExperimentConfig cfg, const RawOptions& raw, const std::vector<std::string>& snrs,
              const std::string& baseline, const std::string& out_path, std::ostream& out, std::ostream& err) {
  apply_algorithm(cfg, raw);
  apply_mask(cfg, raw);
  for (const auto& s : snrs) cfg.snr_db.push_back(parse_snr(s));
  if (cfg.snr_db.empty()) throw Error(ErrorKind::InvalidParameter, "sweep needs at least one snr level");
  std::vector<Algorithm> algs{cfg.algorithm};
  if (!baseline.empty()) {
    const Algorithm b = parse_algorithm(baseline);
    if (b != Algorithm::HioEr) throw Error(ErrorKind::InvalidParameter, "only hioer is available as a baseline");
    algs.push_back(b);
  }
  cfg.resolve();
  const std::uint64_t seed = seed_or_entropy(raw.seed, err);
  const Mask m = build_mask(cfg, seed);
  const std::size_t threads = resolve_threads(raw.threads);

  std::ostringstream body;
  body << "snr_db,algorithm,mean_error_db,median_error_db,trials\n";
  for (double snr : cfg.snr_db) {
    std::vector<std::vector<double>> errs(algs.size(), std::vector<double>(cfg.trials));
    std::vector<std::string> names(algs.size());
    parallel_for(cfg.trials, threads, [&](std::size_t i) {
      const Trial t = make_trial(cfg, m, seed + i, snr);
      for (std::size_t a = 0; a < algs.size(); ++a) {
        const RecoveryResult r = run_algorithm(algs[a], cfg, t.y, m, t.truth);
        errs[a][i] = *r.error_db;
        if (i == 0) names[a] = r.algorithm;
      }
    });
    for (std::size_t a = 0; a < algs.size(); ++a) {
      const double mean = std::accumulate(errs[a].begin(), errs[a].end(), 0.0) / static_cast<double>(cfg.trials);
      body << (std::isinf(snr) ? std::string("inf") : db(snr)) << "," << names[a] << "," << db(mean) << ","
           << db(median(errs[a])) << "," << cfg.trials << "\n";
    }
  }
  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorKind::Io, "cannot open '" + out_path + "' for writing");
    f << body.str();
    out << out_path << "\n";
  }
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& ds, std::size_t trials, const std::optional<std::uint64_t>& seed_opt,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (ds.empty()) throw Error(ErrorKind::InvalidParameter, "bench needs at least one d");
  if (trials < 1) throw Error(ErrorKind::InvalidParameter, "trials must be >= 1");
  const std::uint64_t seed = seed_or_entropy(seed_opt, err);
  std::ostringstream body;
  body << "d,algorithm,mean_runtime_s\n";
  for (std::size_t row = 0; row < ds.size(); ++row) {
    const ExperimentConfig cfg = bench_config(ds[row]);
    if (cfg.d != ds[row]) {
      err << "d " << ds[row] << " adjusted to " << cfg.d << " (rho=" << cfg.rho << ", L=" << cfg.L << ")\n";
    }
    const std::uint64_t row_seed = derive_seed(seed, row);
    const Mask m = build_mask(cfg, row_seed);
    double total = 0.0;
    std::string name;
    for (std::size_t i = 0; i < trials; ++i) {
      const Trial t = make_trial(cfg, m, row_seed + i, std::numeric_limits<double>::infinity());
      const RecoveryResult r = run_algorithm(cfg.algorithm, cfg, t.y, m);
      total += r.runtime_seconds;
      name = r.algorithm;
    }
    body << cfg.d << "," << name << "," << fmt("%.6e", total / static_cast<double>(trials)) << "\n";
  }
  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorKind::Io, "cannot open '" + out_path + "' for writing");
    f << body.str();
    out << out_path << "\n";
  }
  return 0;
}

struct MaskOptions {
  std::string kind = "exp_bandlimited";
  std::size_t d = 60;
  std::size_t rho = 8;
  std::size_t delta = 10;
  std::size_t kappa = 0;
  std::size_t gamma = 0;
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_masks(const MaskOptions& o, std::ostream& out, std::ostream& err) {
  const MaskKind kind = parse_mask_kind(o.kind);
  if (kind == MaskKind::User) throw Error(ErrorKind::InvalidParameter, "masks cannot generate a user mask");
  if (o.count < 1) throw Error(ErrorKind::InvalidParameter, "count must be >= 1");
  if (!o.out.empty() && o.count != 1) throw Error(ErrorKind::InvalidParameter, "--out needs --count 1");
  std::uint64_t seed = 0;
  if (kind == MaskKind::RandomBandlimited) seed = seed_or_entropy(o.seed, err);
  out << "kind,d,support,mu,admissible\n";
  for (std::size_t i = 0; i < o.count; ++i) {
    Mask m;
    double mu = 0.0;
    switch (kind) {
      case MaskKind::ExpBandlimited: m = exp_bandlimited_mask(o.d, o.rho); break;
      case MaskKind::RandomBandlimited: m = random_bandlimited_mask(o.d, o.rho, seed + i); break;
      default: m = exp_compact_mask(o.d, o.delta); break;
    }
    const std::size_t kappa = o.kappa ? o.kappa : m.support;
    if (m.domain == SupportDomain::Fourier) {
      mu = mu1(m, kappa);
    } else {
      mu = o.gamma ? mu2(m, o.gamma) : mu_compact_collapse(m, kappa);
    }
    const AdmissibilityReport adm = check_admissible(m);
    out << to_string(m.kind) << "," << o.d << "," << m.support << "," << fmt("%.10e", mu) << ","
        << (adm.admissible ? "true" : "false") << "\n";
    if (!o.out.empty()) write_mask_file(o.out, m);
  }
  return 0;
}

/// Reads `key=value` lines ('#' comments) into `--key=value` tokens.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t\r");
    const auto e = t.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    kv.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return kv;
}

/// Splices a sweep config file into the argument list; flags given on the command line win.
std::vector<std::string> expand_sweep_config(const std::vector<std::string>& args) {
  const auto sub = std::find(args.begin(), args.end(), "sweep");
  if (sub == args.end()) return args;
  std::vector<std::string> rest;
  std::string path;
  for (auto it = sub + 1; it != args.end(); ++it) {
    if (*it == "--config" && it + 1 != args.end()) {
      path = *++it;
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
    } else {
      rest.push_back(*it);
    }
  }
  if (path.empty()) return args;
  std::vector<std::string> out(args.begin(), sub + 1);
  for (const auto& [key, value] : read_config_file(path)) {
    const std::string flag = "--" + key;
    const bool explicit_flag = std::any_of(rest.begin(), rest.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!explicit_flag) out.push_back(flag + "=" + value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NearZeroDenominator:
    case ErrorKind::NoConvergence:
    case ErrorKind::ZeroNorm: return 1;
    default: return 2;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover signals from spectrogram magnitudes", "wdd"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  ExperimentConfig cfg;
  RawOptions raw;

  auto* sim = app.add_subcommand("simulate", "Write measurements, ground truth and mask for one random trial");
  std::string sim_snr = "inf";
  std::string prefix = "wdd";
  add_sizes(sim, cfg);
  add_algorithm(sim, cfg, raw);
  sim->add_option("--mask", raw.mask, "exp | random | exp_bandlimited | random_bandlimited | exp_compact")->capture_default_str();
  sim->add_option("--mask-seed", raw.mask_seed, "Seed for random masks");
  sim->add_option("--snr", sim_snr, "SNR in dB, or inf for noiseless")->capture_default_str();
  sim->add_option("--seed", raw.seed, "Trial seed (drawn from entropy and printed when omitted)");
  sim->add_option("--out", prefix, "Output prefix")->capture_default_str();

  auto* rec = app.add_subcommand("recover", "Recover a signal from a measurement file");
  std::string meas_path, mask_path, truth_path, est_path;
  add_algorithm(rec, cfg, raw);
  rec->add_option("--measurements", meas_path, "Measurement CSV")->required();
  rec->add_option("--mask", mask_path, "Mask CSV")->required();
  rec->add_option("--truth", truth_path, "Ground-truth CSV for error_db");
  rec->add_option("--out", est_path, "Estimate CSV (default: <measurements>.estimate.csv)");

  auto* sweep = app.add_subcommand("sweep", "Mean and median error over trials at each SNR");
  std::vector<std::string> snrs{"10", "20", "30", "40", "50", "60"};
  std::string baseline, sweep_out;
  cfg.trials = 100;
  std::string config_path;
  sweep->add_option("--config", config_path, "key=value file with any of these options (flags win)");
  add_sizes(sweep, cfg);
  add_algorithm(sweep, cfg, raw);
  sweep->add_option("--mask", raw.mask, "Mask kind")->capture_default_str();
  sweep->add_option("--mask-seed", raw.mask_seed, "Seed for random masks");
  sweep->add_option("--snr", snrs, "SNR levels in dB")->delimiter(',')->capture_default_str();
  sweep->add_option("--trials", cfg.trials, "Trials per level")->capture_default_str();
  sweep->add_option("--seed", raw.seed, "Base seed; trial i uses seed + i");
  sweep->add_option("--threads", raw.threads, "Worker threads (default: WDD_THREADS or all cores)");
  sweep->add_option("--baseline", baseline, "Also run a baseline (hioer)");
  sweep->add_option("--out", sweep_out, "Results CSV (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Runtime of Algorithm 1 over a list of d");
  std::vector<std::size_t> bench_d;
  std::size_t bench_trials = 3;
  std::optional<std::uint64_t> bench_seed;
  std::string bench_out;
  bench->add_option("--d", bench_d, "Signal lengths")->delimiter(',')->required();
  bench->add_option("--trials", bench_trials, "Trials per d")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--out", bench_out, "Timing CSV (default: stdout)");

  auto* masks = app.add_subcommand("masks", "Generate masks and report their mu constant and admissibility");
  MaskOptions mo;
  masks->add_option("--kind", mo.kind, "exp_bandlimited | random_bandlimited | exp_compact")->capture_default_str();
  masks->add_option("--d", mo.d, "Signal length")->capture_default_str();
  masks->add_option("--rho", mo.rho, "Fourier support")->capture_default_str();
  masks->add_option("--delta", mo.delta, "Spatial support")->capture_default_str();
  masks->add_option("--kappa", mo.kappa, "Band half-width for mu (default: the support)");
  masks->add_option("--gamma", mo.gamma, "Report mu2 over this signal bandwidth (compact masks)");
  masks->add_option("--count", mo.count, "Random masks with seeds seed, seed+1, ...")->capture_default_str();
  masks->add_option("--seed", mo.seed, "Seed for random masks");
  masks->add_option("--out", mo.out, "Write the mask CSV");

  auto* check = app.add_subcommand("selfcheck", "Run the identity suites");
  bool json = false;
  std::uint64_t check_seed = 20240917;
  std::vector<std::string> inject;
  check->add_flag("--json", json, "Machine-readable output");
  check->add_option("--seed", check_seed, "Seed for the random vectors")->capture_default_str();
  check->add_option("--inject-fault", inject, "Deliberate fault: shifted-product-sign");

  try {
    const std::vector<std::string> expanded = expand_sweep_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const Error& e) {
    err << "wdd: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg, raw, sim_snr, prefix, out, err);
    if (rec->parsed()) return cmd_recover(cfg, raw, meas_path, mask_path, truth_path, est_path, out);
    if (sweep->parsed()) return cmd_sweep(cfg, raw, snrs, baseline, sweep_out, out, err);
    if (bench->parsed()) return cmd_bench(bench_d, bench_trials, bench_seed, bench_out, out, err);
    if (masks->parsed()) return cmd_masks(mo, out, err);
    if (check->parsed()) {
      identities::Faults faults;
      for (const auto& f : inject) {
        if (f == "shifted-product-sign") {
          faults.shifted_product_sign = true;
        } else {
          err << "unknown fault '" << f << "'\n";
          return 2;
        }
      }
      return selfcheck(out, check_seed, json, faults);
    }
  } catch (const Error& e) {
    err << "wdd: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "wdd: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wdd::cli
