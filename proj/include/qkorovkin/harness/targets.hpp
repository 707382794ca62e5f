#pragma once

#include "qkorovkin/moments.hpp"
#include "qkorovkin/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qkorovkin::harness {

/// A target function f on [0, 1]. Monomial targets get closed-form node values.
struct Target {
    std::string name;
    RealFunction f;
    std::optional<unsigned> monomial;  // f(s) = s^m exactly

    [[nodiscard]] bool is_constant() const noexcept { return monomial == 0u; }
};

/// identity, square, sine-bump (sin πs), abs-shift (|s − 1/2|), constant (1).
[[nodiscard]] const std::vector<std::string>& builtin_target_names();

/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] Target builtin_target(const std::string& name);

/// Piecewise-linear interpolant of samples on a uniform grid of [0, 1].
[[nodiscard]] Target tabulated_target(std::vector<double> samples);

[[nodiscard]] OperatorEvaluator make_target_operator(const OperatorSpec& spec, const Target& target,
                                                     SeriesForm form);

/// Grid points i/(G−1) of [0, 1].
[[nodiscard]] std::vector<double> uniform_grid(std::size_t points);

struct SupError {
    double error = 0.0;       // max_x |K(f;x) − f(x)| over the grid
    double slack = 0.0;       // max tail bound over the grid
    std::size_t p_used = 0;   // max over the grid
    bool mass_reached = true;
};

[[nodiscard]] SupError sup_error(OperatorEvaluator& op, const Target& target,
                                 const std::vector<double>& grid, const Truncation& trunc,
                                 double factor = 1.0);

}  // namespace qkorovkin::harness
