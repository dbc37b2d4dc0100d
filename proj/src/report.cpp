#include "dirsparse/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace dirsparse {

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{})
    throw std::runtime_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, int lineno) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument("config line " + std::to_string(lineno) +
                                ": bad number '" + std::string(text) + "'");
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, int lineno) {
  std::vector<T> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = trim(text.substr(start, comma - start));
    if (item.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty list entry");
    values.push_back(parse_number<T>(item, lineno));
    start = comma + 1;
  }
  return values;
}

}  // namespace

void apply_config_text(std::istream& in, ExperimentConfig& config) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const std::size_t hash = view.find('#');
        hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    if (key == "alpha_mode") {
      config.alpha_mode = alpha_mode_from_string(std::string(value));
    } else if (key == "fixed_alpha") {
      config.fixed_alpha = parse_number<double>(value, lineno);
    } else if (key == "n_grid") {
      config.n_grid = parse_list<int>(value, lineno);
    } else if (key == "threshold_exponents") {
      config.threshold_exponents = parse_list<double>(value, lineno);
    } else if (key == "trials") {
      config.trials = parse_number<int>(value, lineno);
    } else if (key == "master_seed") {
      config.master_seed = parse_number<std::uint64_t>(value, lineno);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + std::string(key) + "'");
    }
  }
}

std::string config_to_text(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "alpha_mode=" << to_string(config.alpha_mode) << '\n';
  if (config.alpha_mode == AlphaMode::fixed)
    out << "fixed_alpha=" << format_double(config.fixed_alpha) << '\n';
  out << "n_grid=";
  for (std::size_t i = 0; i < config.n_grid.size(); ++i)
    out << (i ? "," : "") << config.n_grid[i];
  out << '\n' << "threshold_exponents=";
  for (std::size_t i = 0; i < config.threshold_exponents.size(); ++i)
    out << (i ? "," : "") << format_double(config.threshold_exponents[i]);
  out << '\n';
  out << "trials=" << config.trials << '\n';
  out << "master_seed=" << config.master_seed << '\n';
  return out.str();
}

namespace {

// Shared row walk: trials tables are n-major, then exponent in config
// order, then trial index.
template <typename Row>
void for_each_trial_row(const TrialSet& set, Row&& row) {
  const std::size_t trials = static_cast<std::size_t>(set.config.trials);
  const std::size_t n_exp = set.config.threshold_exponents.size();
  if (set.records.size() != set.config.n_grid.size() * trials)
    throw std::invalid_argument("trials table: records do not match config");
  for (std::size_t ni = 0; ni < set.config.n_grid.size(); ++ni)
    for (std::size_t j = 0; j < n_exp; ++j)
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialRecord& rec = set.records[ni * trials + t];
        if (rec.counts.size() != n_exp)
          throw std::invalid_argument(
              "trials table: records do not match config");
        row(rec, set.config.threshold_exponents[j], rec.counts[j]);
      }
}

}  // namespace

void write_trials_csv(std::ostream& out, const TrialSet& set) {
  out << "alpha_mode,n,threshold_exponent,trial_index,count\n";
  const std::string mode = to_string(set.config.alpha_mode);
  for_each_trial_row(set,
                     [&](const TrialRecord& rec, double exponent, int count) {
                       out << mode << ',' << rec.n << ','
                           << format_double(exponent) << ','
                           << rec.trial_index << ',' << count << '\n';
                     });
}

void write_trials_json(std::ostream& out, const TrialSet& set) {
  const std::string mode = to_string(set.config.alpha_mode);
  out << "[\n";
  bool first = true;
  for_each_trial_row(set,
                     [&](const TrialRecord& rec, double exponent, int count) {
                       out << (first ? "" : ",\n");
                       first = false;
                       out << "{\"alpha_mode\":\"" << mode
                           << "\",\"n\":" << rec.n
                           << ",\"threshold_exponent\":"
                           << format_double(exponent)
                           << ",\"trial_index\":" << rec.trial_index
                           << ",\"count\":" << count << '}';
                     });
  out << "\n]\n";
}

void write_curves_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<QuantileCurve>& curves) {
  out << "alpha_mode,n,threshold_exponent,scaled,q25,q50,q75\n";
  const std::string mode = to_string(config.alpha_mode);
  for (const QuantileCurve& c : curves)
    out << mode << ',' << c.n << ',' << format_double(c.threshold_exponent)
        << ',' << (c.scaled_by_log_n ? 1 : 0) << ',' << format_double(c.q25)
        << ',' << format_double(c.q50) << ',' << format_double(c.q75)
        << '\n';
}

void write_curves_json(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<QuantileCurve>& curves) {
  const std::string mode = to_string(config.alpha_mode);
  out << "[\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const QuantileCurve& c = curves[i];
    out << (i ? ",\n" : "");
    out << "{\"alpha_mode\":\"" << mode << "\",\"n\":" << c.n
        << ",\"threshold_exponent\":" << format_double(c.threshold_exponent)
        << ",\"scaled\":" << (c.scaled_by_log_n ? "true" : "false")
        << ",\"q25\":" << format_double(c.q25)
        << ",\"q50\":" << format_double(c.q50)
        << ",\"q75\":" << format_double(c.q75) << '}';
  }
  out << "\n]\n";
}

std::string describe(const BoundResult& result) {
  std::ostringstream out;
  if (!result.preconditions_met) {
    out << "preconditions met: no (bound does not apply)\n";
    return out.str();
  }
  out << "lower bound:  " << format_double(result.lower_bound);
  if (result.vacuous()) out << "  (vacuous: below zero)";
  out << '\n';
  out << "first term:   " << format_double(result.first_term) << '\n';
  out << "second term:  " << format_double(result.second_term) << '\n';
  out << "preconditions met: yes\n";
  return out.str();
}

std::string describe(const BoundVerdict& verdict) {
  std::ostringstream out;
  out << verdict.source << " n=" << verdict.event.n
      << " c=" << format_double(verdict.threshold_exponent)
      << " k=" << format_double(verdict.event.k)
      << " bound=" << format_double(verdict.theoretical_lower_bound)
      << " successes=" << verdict.successes << '/' << verdict.trials
      << " rate=" << format_double(verdict.empirical_success_rate)
      << " ci=[" << format_double(verdict.confidence_lower) << ','
      << format_double(verdict.confidence_upper) << ']'
      << (verdict.retried ? " retried" : "")
      << (verdict.pass ? " PASS" : " FAIL");
  return out.str();
}

}  // namespace dirsparse
