#include "dirsparse/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dirsparse/rng.hpp"
#include "dirsparse/samplers.hpp"
#include "dirsparse/special_functions.hpp"
#include "dirsparse/statistics.hpp"

namespace dirsparse {

std::string to_string(AlphaMode mode) {
  switch (mode) {
    case AlphaMode::inverse_n:
      return "inverse_n";
    case AlphaMode::inverse_n_squared:
      return "inverse_n_squared";
    case AlphaMode::fixed:
      return "fixed";
  }
  throw std::invalid_argument("to_string: bad AlphaMode value");
}

AlphaMode alpha_mode_from_string(const std::string& name) {
  if (name == "inverse_n") return AlphaMode::inverse_n;
  if (name == "inverse_n_squared") return AlphaMode::inverse_n_squared;
  if (name == "fixed") return AlphaMode::fixed;
  throw std::invalid_argument("unknown alpha mode: " + name);
}

double alpha_for(const ExperimentConfig& config, int n) {
  if (n < 1) throw std::domain_error("alpha_for: need n >= 1");
  switch (config.alpha_mode) {
    case AlphaMode::inverse_n:
      return 1.0 / n;
    case AlphaMode::inverse_n_squared:
      return 1.0 / (static_cast<double>(n) * n);
    case AlphaMode::fixed:
      return config.fixed_alpha;
  }
  throw std::invalid_argument("alpha_for: bad AlphaMode value");
}

ExperimentConfig default_figure_config(AlphaMode mode) {
  ExperimentConfig config;
  config.alpha_mode = mode;
  config.trials = 1000;
  config.master_seed = 0;
  switch (mode) {
    case AlphaMode::inverse_n:
      config.n_grid = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
      config.threshold_exponents = {1.0, 2.0, 3.0, 4.0};
      break;
    case AlphaMode::inverse_n_squared:
      config.n_grid = {4, 16, 64, 256, 1024};
      config.threshold_exponents = {2.0};
      break;
    case AlphaMode::fixed:
      config.fixed_alpha = 1.0;
      config.n_grid = {16, 64, 256};
      config.threshold_exponents = {1.0, 2.0};
      break;
  }
  return config;
}

namespace {

void validate(const ExperimentConfig& config) {
  if (config.trials < 1)
    throw std::domain_error("run_trials: need trials >= 1");
  if (config.n_grid.empty())
    throw std::invalid_argument("run_trials: empty n grid");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 1)
      throw std::domain_error("run_trials: need every n >= 1");
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1])
      throw std::invalid_argument("run_trials: n grid must be strictly increasing");
  }
  if (config.threshold_exponents.empty())
    throw std::invalid_argument("run_trials: no threshold exponents");
  for (double c : config.threshold_exponents)
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::domain_error("run_trials: exponents must be positive");
  if (config.alpha_mode == AlphaMode::fixed &&
      (!(config.fixed_alpha > 0.0) || !std::isfinite(config.fixed_alpha)))
    throw std::domain_error("run_trials: need fixed_alpha > 0");
}

}  // namespace

TrialSet run_trials(const ExperimentConfig& config, int threads) {
  validate(config);
  if (threads < 1) throw std::domain_error("run_trials: need threads >= 1");
  const std::size_t n_cells = config.n_grid.size();
  const std::size_t n_exp = config.threshold_exponents.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  std::vector<double> alphas(n_cells);
  std::vector<std::vector<double>> log_eps(n_cells,
                                           std::vector<double>(n_exp));
  for (std::size_t i = 0; i < n_cells; ++i) {
    const int n = config.n_grid[i];
    alphas[i] = alpha_for(config, n);
    const double ln_n = std::log(static_cast<double>(n));
    for (std::size_t j = 0; j < n_exp; ++j)
      log_eps[i][j] = -config.threshold_exponents[j] * ln_n;
  }

  const std::size_t total = n_cells * trials;
  TrialSet out;
  out.config = config;
  out.records.resize(total);

  // Each record owns an independently derived stream, so work-stealing over
  // a shared counter cannot perturb the results -- only their timing.
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::string err_msg;

  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= total) return;
      const std::size_t ni = r / trials;
      const std::size_t t = r % trials;
      const int n = config.n_grid[ni];
      try {
        Stream stream = derive_stream(
            {config.master_seed,
             pair_index(n, static_cast<std::uint32_t>(t))});
        const LogSimplexPoint point =
            sample_dirichlet_log(stream, {n, alphas[ni]});
        TrialRecord rec;
        rec.n = n;
        rec.trial_index = static_cast<int>(t);
        rec.counts.resize(n_exp);
        for (std::size_t j = 0; j < n_exp; ++j)
          rec.counts[j] = sparsity_count_log(point, log_eps[ni][j]);
        out.records[r] = std::move(rec);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!failed.exchange(true))
          err_msg = "trial n=" + std::to_string(n) +
                    " index=" + std::to_string(t) + ": " + e.what();
        return;
      }
    }
  };

  const int workers =
      static_cast<int>(std::min<std::size_t>(threads, total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("run_trials: " + err_msg);
  return out;
}

std::vector<QuantileCurve> quantile_curves(const TrialSet& set,
                                           bool scale_by_log_n) {
  const ExperimentConfig& config = set.config;
  const std::size_t n_exp = config.threshold_exponents.size();
  const std::size_t trials = static_cast<std::size_t>(
      std::max(config.trials, 0));
  if (config.n_grid.empty() || n_exp == 0 ||
      set.records.size() != config.n_grid.size() * trials)
    throw std::invalid_argument(
        "quantile_curves: records do not match config layout");
  std::vector<QuantileCurve> out;
  out.reserve(config.n_grid.size() * n_exp);
  std::vector<double> xs(trials);
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const int n = config.n_grid[ni];
    if (scale_by_log_n && n < 2)
      throw std::domain_error("quantile_curves: ln(n) scaling needs n >= 2");
    const double scale =
        scale_by_log_n ? 1.0 / std::log(static_cast<double>(n)) : 1.0;
    for (std::size_t j = 0; j < n_exp; ++j) {
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialRecord& rec = set.records[ni * trials + t];
        if (rec.n != n || rec.counts.size() != n_exp)
          throw std::invalid_argument(
              "quantile_curves: records do not match config layout");
        xs[t] = rec.counts[j] * scale;
      }
      std::sort(xs.begin(), xs.end());
      QuantileCurve curve;
      curve.n = n;
      curve.threshold_exponent = config.threshold_exponents[j];
      curve.q25 = quantile_sorted(xs, 0.25);
      curve.q50 = quantile_sorted(xs, 0.50);
      curve.q75 = quantile_sorted(xs, 0.75);
      curve.scaled_by_log_n = scale_by_log_n;
      out.push_back(curve);
    }
  }
  return out;
}

BoundVerdict verify_bound(std::span<const TrialRecord> records,
                          std::size_t exponent_index,
                          const SparsityEvent& event,
                          const BoundResult& theoretical, std::string source,
                          double slack) {
  if (records.empty()) throw std::invalid_argument("verify_bound: no trials");
  if (!theoretical.preconditions_met)
    throw std::invalid_argument(
        "verify_bound: guarantee preconditions not met");
  if (!(slack >= 0.0))
    throw std::domain_error("verify_bound: need slack >= 0");
  int successes = 0;
  for (const TrialRecord& rec : records) {
    if (rec.n != event.n)
      throw std::invalid_argument("verify_bound: record dimension mismatch");
    if (exponent_index >= rec.counts.size())
      throw std::invalid_argument("verify_bound: exponent index out of range");
    if (rec.counts[exponent_index] <= event.k) ++successes;
  }
  BoundVerdict v;
  v.source = std::move(source);
  v.event = event;
  v.threshold_exponent =
      event.n > 1 ? -event.log_epsilon / std::log(static_cast<double>(event.n))
                  : 0.0;
  v.theoretical_lower_bound = theoretical.lower_bound;
  v.trials = static_cast<int>(records.size());
  v.successes = successes;
  v.empirical_success_rate =
      static_cast<double>(successes) / static_cast<double>(records.size());
  v.confidence_lower = wilson_lower(successes, v.trials, kZ99OneSided);
  v.confidence_upper = wilson_upper(successes, v.trials, kZ99OneSided);
  v.pass = v.confidence_upper >= theoretical.lower_bound - slack;
  return v;
}

namespace {

struct GuaranteeCheck {
  std::size_t grid_index;
  std::size_t exponent_index;
  SparsityEvent event;
  BoundResult theoretical;
  const char* source;
};

std::vector<GuaranteeCheck> applicable_checks(const ExperimentConfig& config) {
  std::vector<GuaranteeCheck> checks;
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const int n = config.n_grid[ni];
    for (std::size_t j = 0; j < config.threshold_exponents.size(); ++j) {
      const double c = config.threshold_exponents[j];
      if (config.alpha_mode == AlphaMode::inverse_n) {
        if (c < 1.0) continue;
        const EventBound eb = inverse_n_bound(n, c);
        if (!eb.bound.preconditions_met || !eb.chained.preconditions_met)
          continue;
        checks.push_back({ni, j, eb.event, eb.bound, "inverse_n"});
        checks.push_back({ni, j, eb.event, eb.chained, "log_sparsity"});
      } else if (config.alpha_mode == AlphaMode::inverse_n_squared) {
        if (std::fabs(c - 2.0) > 1e-12) continue;
        const EventBound eb = inverse_n_squared_bound(n);
        if (!eb.bound.preconditions_met) continue;
        checks.push_back({ni, j, eb.event, eb.bound, "inverse_n_squared"});
      }
    }
  }
  return checks;
}

}  // namespace

std::vector<BoundVerdict> evaluate_verdicts(const TrialSet& set,
                                            const VerdictOptions& options) {
  const ExperimentConfig& config = set.config;
  const std::size_t trials =
      static_cast<std::size_t>(std::max(config.trials, 0));
  if (config.n_grid.empty() ||
      set.records.size() != config.n_grid.size() * trials)
    throw std::invalid_argument(
        "evaluate_verdicts: records do not match config layout");
  std::vector<BoundVerdict> out;
  for (const GuaranteeCheck& check : applicable_checks(config)) {
    const std::span<const TrialRecord> cell(
        set.records.data() + check.grid_index * trials, trials);
    BoundVerdict verdict =
        verify_bound(cell, check.exponent_index, check.event,
                     check.theoretical, check.source, options.slack);
    if (!verdict.pass && options.retry_at_10x) {
      // A fresh, larger, equally deterministic run of just this dimension:
      // same master seed, trial indices 0 .. 10*trials-1.
      ExperimentConfig rerun = config;
      rerun.n_grid = {config.n_grid[check.grid_index]};
      rerun.trials = config.trials * 10;
      const TrialSet fresh = run_trials(rerun, options.threads);
      verdict = verify_bound(fresh.records, check.exponent_index, check.event,
                             check.theoretical, check.source, options.slack);
      verdict.retried = true;
    }
    out.push_back(std::move(verdict));
  }
  return out;
}

double gamma_blowup_violation(double alpha, double z, double c) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("gamma_blowup_violation: need alpha > 0");
  if (!(z >= 1.0) || !std::isfinite(z))
    throw std::domain_error("gamma_blowup_violation: need z >= 1");
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::domain_error("gamma_blowup_violation: need c >= 0");
  const double lhs = reg_lower_inc_gamma(alpha, z * c);
  const double rhs =
      std::exp(alpha * std::log(z)) * reg_lower_inc_gamma(alpha, c);
  return lhs - rhs;
}

BlowupReport check_gamma_blowup(std::span<const double> shapes,
                                std::span<const double> zs,
                                std::span<const double> cs) {
  static constexpr double kShapes[] = {1e-6, 1e-4, 1e-2, 0.1,
                                       0.5,  1.0,  2.0,  10.0};
  static constexpr double kZs[] = {1.0, 1.5, 2.0, 5.0, 10.0, 100.0};
  static constexpr double kCs[] = {0.0, 0.01, 0.1, 0.5, 1.0,
                                   2.0, 5.0,  10.0, 50.0};
  if (shapes.empty()) shapes = kShapes;
  if (zs.empty()) zs = kZs;
  if (cs.empty()) cs = kCs;
  BlowupReport report;
  for (const double alpha : shapes)
    for (const double z : zs)
      for (const double c : cs) {
        const double v = gamma_blowup_violation(alpha, z, c);
        if (v > report.max_violation) {
          report.max_violation = v;
          report.alpha = alpha;
          report.z = z;
          report.c = c;
        }
      }
  report.ok = report.max_violation <= 1e-9;
  return report;
}

ThresholdChainReport check_threshold_construction(double alpha, int k, int n,
                                                  double epsilon) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("check_threshold_construction: need alpha > 0");
  if (k < 1) throw std::domain_error("check_threshold_construction: need k >= 1");
  if (n < 1) throw std::domain_error("check_threshold_construction: need n >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::domain_error(
        "check_threshold_construction: need epsilon in (0, 1]");
  if (!(k + 1 < 3 * n))
    throw std::domain_error("check_threshold_construction: need k + 1 < 3n");
  const double p = (k + 1.0) / (3.0 * n);

  ThresholdChainReport report;
  report.c = inverse_upper_tail(alpha, p);  // no_convergence propagates
  const double cdf_c = reg_lower_inc_gamma(alpha, report.c);
  report.calibration_gap = std::fabs(cdf_c - (1.0 - p));

  const double scaled = report.c / epsilon;
  if (!std::isfinite(scaled))
    throw std::domain_error(
        "check_threshold_construction: c/epsilon overflows");
  const double cdf_scaled = reg_lower_inc_gamma(alpha, scaled);
  const double factor = std::exp(-alpha * std::log(epsilon));  // epsilon^-a
  report.blowup_margin = factor * cdf_c - cdf_scaled;
  report.exp_step_margin = factor * std::exp(-p) - factor * (1.0 - p);

  const double aggregate_rhs =
      std::exp(-n * alpha * std::log(epsilon) - (k + 1.0) / 3.0);
  const double aggregate_lhs = std::exp(n * std::log(cdf_scaled));
  report.aggregate_margin = aggregate_rhs - aggregate_lhs;

  constexpr double kSlack = 1e-9;
  report.ok = report.blowup_margin >= -kSlack &&
              report.calibration_gap <= kSlack &&
              report.exp_step_margin >= -kSlack &&
              report.aggregate_margin >= -kSlack;
  return report;
}

ChernoffReport check_chernoff_step(int n, double p, int trials,
                                   std::uint64_t seed) {
  if (n < 1) throw std::domain_error("check_chernoff_step: need n >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("check_chernoff_step: need p in (0, 1)");
  if (trials < 10000)
    throw std::domain_error("check_chernoff_step: need trials >= 10000");

  ChernoffReport report;
  report.n = n;
  report.p = p;
  report.trials = trials;
  report.threshold = binomial_event_threshold(n, p);
  report.exact_tail = binomial_upper_tail(n, p, report.threshold);
  report.bound = chernoff_tail_bound(n, p);
  report.tail_within_bound = report.exact_tail <= report.bound;

  if (report.threshold >= 1 && report.threshold <= n) {
    const double beta_tail = reg_inc_beta(
        static_cast<double>(report.threshold),
        static_cast<double>(n - report.threshold) + 1.0, p);
    report.beta_identity_gap = std::fabs(report.exact_tail - beta_tail);
    report.identity_ok =
        report.beta_identity_gap <= 1e-10 * report.exact_tail + 1e-300;
  } else {
    report.identity_ok = true;  // empty tail has no beta form
  }

  Stream stream = derive_stream({seed, 0});
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (stream.uniform_open01() < p) ++count;
    if (count >= report.threshold) ++hits;
  }
  report.empirical_freq = static_cast<double>(hits) / trials;
  const double se =
      std::sqrt(report.exact_tail * (1.0 - report.exact_tail) / trials);
  report.empirical_ok = std::fabs(report.empirical_freq - report.exact_tail) <=
                        4.0 * se + 2.0 / trials;

  report.ok = report.tail_within_bound && report.identity_ok &&
              report.empirical_ok;
  return report;
}

}  // namespace dirsparse
