#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dirsparse/bounds.hpp"
#include "dirsparse/experiments.hpp"

namespace dirsparse {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

// Flat key=value configuration ('#' starts a comment).  Keys mirror the
// ExperimentConfig fields: alpha_mode, fixed_alpha, n_grid,
// threshold_exponents (comma-separated lists), trials, master_seed.
// Values overwrite whatever `config` already holds, so defaults and
// command-line overrides layer naturally around a file.
void apply_config_text(std::istream& in, ExperimentConfig& config);
std::string config_to_text(const ExperimentConfig& config);

// trials table: alpha_mode,n,threshold_exponent,trial_index,count -- one row
// per (trial, exponent), n-major, exponents in config order.
void write_trials_csv(std::ostream& out, const TrialSet& set);
void write_trials_json(std::ostream& out, const TrialSet& set);

// curves table: alpha_mode,n,threshold_exponent,scaled,q25,q50,q75.
void write_curves_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<QuantileCurve>& curves);
void write_curves_json(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<QuantileCurve>& curves);

// Human-readable report blocks.
std::string describe(const BoundResult& result);
std::string describe(const BoundVerdict& verdict);

}  // namespace dirsparse
