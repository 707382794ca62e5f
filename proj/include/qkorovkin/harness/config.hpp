#pragma once

/**
 * @file config.hpp
 * @brief Experiment configuration: built-in presets overlaid by an INI file.
 *
 * Sections and keys (lists are comma separated, rules are "reciprocal c"
 * for 1 − c/(n+1) or "constant v"; beta_rule takes one rule or r rules
 * separated by ';'):
 *
 *   [operator]       r, n, q_rule, beta_rule, series (joint | marginal)
 *   [target]         name (identity | square | sine-bump | abs-shift | constant | tabulated), samples
 *   [grid]           points, x
 *   [moments]        bounds (stated | corrected)
 *   [truncation]     mass_tol, p_max
 *   [summability]    scheme (default | identity | prefix), prefixes, eps
 *   [power_series]   method (abel | borel), u
 *   [counterexample] operator_terms, check, horizon
 *   [output]         csv
 */

#include "qkorovkin/harness/targets.hpp"
#include "qkorovkin/operators.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkorovkin::harness {

enum class Command { verify_moments, converge, counterexample, summability };

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

[[nodiscard]] const char* command_name(Command c) noexcept;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Command command = Command::verify_moments;

    std::size_t r = 2;
    std::vector<std::size_t> n_ladder;
    ParameterRule q_rule;
    std::vector<ParameterRule> beta_rules{ParameterRule{}};
    SeriesForm form = SeriesForm::joint;

    std::string target = "square";
    std::vector<double> samples;

    std::size_t grid_points = 257;
    std::vector<double> x_points;

    std::string bounds = "stated";

    double mass_tol = 1e-10;
    std::size_t p_max = 4096;

    std::string scheme = "default";
    std::vector<std::size_t> prefixes;
    std::vector<double> eps;

    std::string method = "abel";
    std::vector<double> u_ladder;

    std::size_t operator_terms = 64;
    std::vector<std::size_t> check_points;
    std::size_t horizon = 1000;

    std::string csv_path;

    /// "source:line" of each field set from a config file, keyed "section.key".
    std::map<std::string, std::string> origin;

    /// Throws ConfigError when the rules violate the operator's parameter ranges.
    [[nodiscard]] SequenceSpec sequence() const;
    [[nodiscard]] Target target_function() const;
    [[nodiscard]] Truncation truncation() const;
};

/// The zero-argument experiment for each subcommand.
[[nodiscard]] ExperimentConfig preset(Command c);

/// Overlay an INI document. Errors name the source, line and field.
void load_config(ExperimentConfig& cfg, std::istream& in, const std::string& source);
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// Throws ConfigError on the first invalid field.
void validate(const ExperimentConfig& cfg);

}  // namespace qkorovkin::harness
