// Command-line front end: deterministic Dirichlet sampling, bound
// evaluation, Monte Carlo verification of the guarantees, and numeric
// checks of the underlying inequalities.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/precondition error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dirsparse/bounds.hpp"
#include "dirsparse/experiments.hpp"
#include "dirsparse/report.hpp"
#include "dirsparse/rng.hpp"
#include "dirsparse/samplers.hpp"

namespace {

using namespace dirsparse;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

int cmd_sample(int n, double alpha, int count, std::uint64_t seed) {
  for (int t = 0; t < count; ++t) {
    Stream stream = derive_stream({seed, static_cast<std::uint64_t>(t)});
    const LogSimplexPoint point = sample_dirichlet_log(stream, {n, alpha});
    for (int i = 0; i < n; ++i)
      std::cout << (i ? "," : "") << format_double(point[i]);
    std::cout << '\n';
  }
  return kOk;
}

// Experiment options shared by `verify` and `reproduce-figure`.  Defaults
// come from the mode's standard sweep, a --config file overlays them, and
// explicit flags override the file.
struct RunArgs {
  std::string config_path;
  std::string alpha_mode;
  double fixed_alpha = 1.0;
  std::vector<int> n_grid;
  std::vector<double> exponents;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_run_options(CLI::App* cmd, RunArgs& args, bool with_output) {
  cmd->add_option("--config", args.config_path,
                  "key=value config file (see README)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--alpha-mode", args.alpha_mode,
                  "inverse_n | inverse_n_squared | fixed");
  args.alpha_opt =
      cmd->add_option("--alpha", args.fixed_alpha, "shape for fixed mode");
  cmd->add_option("--n", args.n_grid, "dimension grid (strictly increasing)")
      ->delimiter(',');
  cmd->add_option("--exponents", args.exponents,
                  "threshold exponents c, thresholds are n^-c")
      ->delimiter(',');
  args.trials_opt =
      cmd->add_option("--trials", args.trials, "trials per dimension");
  args.seed_opt = cmd->add_option(
      "--seed", args.seed, "master seed; every stream derives from it");
  cmd->add_option("--threads", args.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  if (with_output) {
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "data file format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

ExperimentConfig resolve_config(const RunArgs& args) {
  AlphaMode mode = AlphaMode::inverse_n;
  if (!args.alpha_mode.empty()) {
    mode = alpha_mode_from_string(args.alpha_mode);
  } else if (!args.config_path.empty()) {
    // Peek at the file so the grid defaults track its mode.
    ExperimentConfig probe;
    std::ifstream in(args.config_path);
    if (!in)
      throw std::runtime_error("cannot read config file: " + args.config_path);
    apply_config_text(in, probe);
    mode = probe.alpha_mode;
  }
  ExperimentConfig config = default_figure_config(mode);
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in)
      throw std::runtime_error("cannot read config file: " + args.config_path);
    apply_config_text(in, config);
  }
  if (!args.alpha_mode.empty()) config.alpha_mode = mode;
  if (args.alpha_opt->count() > 0) config.fixed_alpha = args.fixed_alpha;
  if (!args.n_grid.empty()) config.n_grid = args.n_grid;
  if (!args.exponents.empty()) config.threshold_exponents = args.exponents;
  if (args.trials_opt->count() > 0) config.trials = args.trials;
  if (args.seed_opt->count() > 0) config.master_seed = args.seed;
  return config;
}

int run_experiment(const RunArgs& args, bool write_files) {
  const ExperimentConfig config = resolve_config(args);
  std::cout << "configuration:\n" << config_to_text(config);

  const TrialSet set = run_trials(config, args.threads);
  const bool scale = std::all_of(config.n_grid.begin(), config.n_grid.end(),
                                 [](int n) { return n >= 2; });
  const std::vector<QuantileCurve> curves = quantile_curves(set, scale);

  if (write_files) {
    namespace fs = std::filesystem;
    const fs::path dir(args.out_dir);
    if (!dir.empty()) fs::create_directories(dir);
    const bool json = args.format == "json";
    const fs::path trials_path = dir / (json ? "trials.json" : "trials.csv");
    const fs::path curves_path = dir / (json ? "curves.json" : "curves.csv");
    std::ofstream trials_out(trials_path, std::ios::binary);
    if (!trials_out)
      throw std::runtime_error("cannot write " + trials_path.string());
    json ? write_trials_json(trials_out, set)
         : write_trials_csv(trials_out, set);
    std::ofstream curves_out(curves_path, std::ios::binary);
    if (!curves_out)
      throw std::runtime_error("cannot write " + curves_path.string());
    json ? write_curves_json(curves_out, config, curves)
         : write_curves_csv(curves_out, config, curves);
    std::cout << "wrote " << trials_path.string() << " and "
              << curves_path.string() << '\n';
  }

  VerdictOptions options;
  options.threads = args.threads;
  const std::vector<BoundVerdict> verdicts = evaluate_verdicts(set, options);
  bool all_pass = true;
  for (const BoundVerdict& v : verdicts) {
    std::cout << describe(v) << '\n';
    all_pass = all_pass && v.pass;
  }
  if (verdicts.empty())
    std::cout << "no guarantees apply to this configuration\n";
  std::cout << (all_pass ? "verdicts: all pass\n" : "verdicts: FAIL\n");
  return all_pass ? kOk : kVerificationFailure;
}

int cmd_check_proofs(double slack, int mc_trials) {
  bool all_ok = true;

  const BlowupReport blowup = check_gamma_blowup();
  const bool blowup_ok = blowup.max_violation <= slack;
  std::cout << "cdf scaling: max violation "
            << format_double(blowup.max_violation) << " at (alpha="
            << format_double(blowup.alpha) << ", z=" << format_double(blowup.z)
            << ", c=" << format_double(blowup.c) << ") -> "
            << (blowup_ok ? "ok" : "VIOLATION") << '\n';
  all_ok = all_ok && blowup_ok;

  struct ChainCell {
    double alpha;
    int k;
    int n;
    double epsilon;
  };
  static constexpr ChainCell kChainCells[] = {
      {1.0, 2, 4, 0.5},    {1.0, 5, 100, 0.01}, {0.5, 3, 50, 0.1},
      {0.1, 1, 10, 0.25},  {0.01, 2, 30, 1e-3}, {1e-4, 5, 100, 1e-4},
      {0.7, 3, 5, 1.0},    {2.0, 8, 16, 0.125}, {10.0, 20, 40, 0.3},
  };
  for (const ChainCell& cell : kChainCells) {
    const ThresholdChainReport r =
        check_threshold_construction(cell.alpha, cell.k, cell.n, cell.epsilon);
    const double min_margin = std::min(
        {r.blowup_margin, r.exp_step_margin, r.aggregate_margin});
    const bool cell_ok = min_margin >= -slack && r.calibration_gap <= slack;
    std::cout << "chain(alpha=" << format_double(cell.alpha)
              << ", k=" << cell.k << ", n=" << cell.n
              << ", eps=" << format_double(cell.epsilon)
              << "): c=" << format_double(r.c)
              << " min_margin=" << format_double(min_margin)
              << " gap=" << format_double(r.calibration_gap) << " -> "
              << (cell_ok ? "ok" : "VIOLATION") << '\n';
    all_ok = all_ok && cell_ok;
  }

  struct TailCell {
    int n;
    double p;
  };
  static constexpr TailCell kTailCells[] = {
      {30, 0.1},    {50, 0.05},        {100, 0.02},     {300, 0.02},
      {1000, 2e-3}, {200, 7.0 / 600.0}, {10, 1.0 / 30.0},
  };
  for (const TailCell& cell : kTailCells) {
    const ChernoffReport r = check_chernoff_step(cell.n, cell.p, mc_trials);
    const bool cell_ok = r.bound - r.exact_tail >= -slack && r.identity_ok &&
                         r.empirical_ok;
    std::cout << "tail(n=" << cell.n << ", p=" << format_double(cell.p)
              << "): m=" << r.threshold
              << " exact=" << format_double(r.exact_tail)
              << " bound=" << format_double(r.bound)
              << " empirical=" << format_double(r.empirical_freq) << " -> "
              << (cell_ok ? "ok" : "VIOLATION") << '\n';
    all_ok = all_ok && cell_ok;
  }

  std::cout << (all_ok ? "proof-step checks: PASS\n"
                       : "proof-step checks: FAIL\n");
  return all_ok ? kOk : kVerificationFailure;
}

void print_event(const SparsityEvent& event, double exponent) {
  std::cout << "event: at most k=" << format_double(event.k) << " of n="
            << event.n << " coordinates >= n^-" << format_double(exponent)
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dirichlet sparsity: log-domain sampling, probability lower bounds, "
      "and Monte Carlo verification"};
  app.require_subcommand(1);
  int rc = kOk;

  // ---- sample ----
  auto* sample = app.add_subcommand(
      "sample", "draw Dirichlet points; one CSV row of log coordinates each");
  int sample_n = 1;
  double sample_alpha = 1.0;
  int sample_count = 1;
  std::uint64_t sample_seed = 0;
  sample->add_option("--n", sample_n, "dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  sample->add_option("--alpha", sample_alpha, "shape parameter");
  sample->add_option("--count", sample_count, "number of draws")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "master seed");
  sample->callback(
      [&] { rc = cmd_sample(sample_n, sample_alpha, sample_count, sample_seed); });

  // ---- bounds ----
  auto* bounds =
      app.add_subcommand("bounds", "evaluate the probability lower bounds");
  bounds->require_subcommand(1);

  auto* master = bounds->add_subcommand(
      "master",
      "general form 1 - eps^(-n alpha) e^-(k+1)/3 - e^-4(k+1)/9");
  double master_eps = 0.5, master_alpha = 1.0, master_k = 1.0;
  int master_n = 2;
  master->add_option("--epsilon", master_eps, "threshold")->required();
  master->add_option("--alpha", master_alpha, "shape")->required();
  master->add_option("--k", master_k, "count ceiling")->required();
  master->add_option("--n", master_n, "dimension")->required();
  master->callback([&] {
    const BoundResult r =
        sparsity_lower_bound(master_eps, master_alpha, master_k, master_n);
    std::cout << describe(r);
    if (!r.preconditions_met) rc = kUsageError;
  });

  auto* power = bounds->add_subcommand(
      "log-sparsity",
      "power-of-n form at alpha=c1/n, k=c2 ln n, eps=n^-c3");
  double power_c1 = 1.0, power_c2 = 6.0, power_c3 = 1.0;
  int power_n = 2;
  power->add_option("--n", power_n, "dimension")->required();
  power->add_option("--c1", power_c1, "shape scale: alpha = c1/n")->required();
  power->add_option("--c2", power_c2, "count scale: k = c2 ln n")->required();
  power->add_option("--c3", power_c3, "threshold exponent: eps = n^-c3")
      ->required();
  power->callback([&] {
    const BoundResult r = log_sparsity_bound(power_n, power_c1, power_c2,
                                             power_c3);
    std::cout << describe(r);
    if (!r.preconditions_met) rc = kUsageError;
  });

  auto* invn = bounds->add_subcommand(
      "inverse-n", "Dir(1/n): at most 6 c0 ln n coordinates above n^-c0");
  double invn_c0 = 1.0;
  int invn_n = 2;
  invn->add_option("--n", invn_n, "dimension")->required();
  invn->add_option("--c0", invn_c0, "threshold exponent (>= 1)")->required();
  invn->callback([&] {
    const EventBound eb = inverse_n_bound(invn_n, invn_c0);
    print_event(eb.event, invn_c0);
    std::cout << describe(eb.bound);
    if (!eb.bound.preconditions_met) {
      rc = kUsageError;
      return;
    }
    std::cout << "sharper chained form:\n" << describe(eb.chained);
  });

  auto* invn2 = bounds->add_subcommand(
      "inverse-n-squared",
      "Dir(1/n^2): at most 5 coordinates above n^-2, n-free constant");
  int invn2_n = 3;
  double invn2_ln_g = 1.0;
  invn2->add_option("--n", invn2_n, "dimension (>= 3)");
  CLI::Option* invn2_g_opt = invn2->add_option(
      "--ln-g", invn2_ln_g, "custom count ceiling k = ln g (in [1, 3n-1))");
  invn2->callback([&] {
    const bool custom = invn2_g_opt->count() > 0;
    const EventBound eb = custom ? inverse_n_squared_bound(invn2_n, invn2_ln_g)
                                 : inverse_n_squared_bound(invn2_n);
    print_event(eb.event, 2.0);
    std::cout << describe(eb.bound);
    if (!eb.bound.preconditions_met) {
      rc = kUsageError;
      return;
    }
    if (!custom)
      std::cout << "lower bound >= 0.64: "
                << (eb.bound.lower_bound >= 0.64 ? "yes" : "no") << '\n';
    std::cout << "sharper chained form:\n" << describe(eb.chained);
  });

  // ---- verify / reproduce-figure ----
  auto* verify = app.add_subcommand(
      "verify", "run the trial sweep and test every applicable guarantee");
  RunArgs verify_args;
  add_run_options(verify, verify_args, /*with_output=*/false);
  verify->callback([&] { rc = run_experiment(verify_args, false); });

  auto* figure = app.add_subcommand(
      "reproduce-figure",
      "trial sweep with trials/curves data files plus verdicts");
  RunArgs figure_args;
  add_run_options(figure, figure_args, /*with_output=*/true);
  figure->callback([&] { rc = run_experiment(figure_args, true); });

  // ---- check-proofs ----
  auto* proofs = app.add_subcommand(
      "check-proofs", "numeric checks of the inequalities behind the bounds");
  double proofs_slack = 1e-9;
  int proofs_trials = 20000;
  proofs->add_option("--slack", proofs_slack,
                     "margin tolerance (margins must exceed -slack)");
  proofs->add_option("--mc-trials", proofs_trials,
                     "Monte Carlo trials for the tail cross-check");
  proofs->callback([&] { rc = cmd_check_proofs(proofs_slack, proofs_trials); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return rc;
}
