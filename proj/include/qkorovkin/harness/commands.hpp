#pragma once

/**
 * @file commands.hpp
 * @brief The four experiment subcommands.
 *
 * CSV columns (floats printed with 17 significant digits):
 *   verify-moments  n,x,m0,m1,m2,bound1,bound2,central2,gamma
 *   converge        n,q,beta,sup_error,rate_bound,ratio,slack,p_used
 *   counterexample  m,x_m,e_m,slack,source
 *   summability     function,eps,N,density,identity_density
 *
 * Every report line that checks an inequality carries the computed slack.
 * verify-moments checks the stated moment bounds by default; these are known
 * to fail near x = 0 (see corrected_moment_bounds), so the default preset
 * exits 1. Set [moments] bounds = corrected for the repaired forms.
 */

#include "qkorovkin/harness/config.hpp"

#include <string>

namespace qkorovkin::harness {

struct CommandResult {
    int exit_code = kExitPass;
    std::string report;
    std::string csv;
};

/// Validates the config first; a ConfigError becomes exit code 2.
[[nodiscard]] CommandResult run_command(const ExperimentConfig& cfg);

[[nodiscard]] CommandResult cmd_verify_moments(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult cmd_converge(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult cmd_counterexample(const ExperimentConfig& cfg);
[[nodiscard]] CommandResult cmd_summability(const ExperimentConfig& cfg);

/// printf("%.17g").
[[nodiscard]] std::string format_real(double v);

}  // namespace qkorovkin::harness
