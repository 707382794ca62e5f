#pragma once

/**
 * @file moments.hpp
 * @brief Moments of K, their closed-form bounds, and the modulus-of-continuity rate.
 */

#include "qkorovkin/operators.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qkorovkin {

struct MomentReport {
    double x = 0.0;
    double moment0 = 0.0;
    double moment1 = 0.0;
    double moment2 = 0.0;
    double bound1 = 0.0;    // bound on |K(s;x) − x|
    double bound2 = 0.0;    // bound on |K(s²;x) − x²|
    double central2 = 0.0;  // K((s−x)²; x) = m2 − 2x m1 + x² m0
    double gamma = 0.0;
    double slack0 = 0.0;  // tail bounds of the three evaluations
    double slack1 = 0.0;
    double slack2 = 0.0;
};

/// K(s^order; x) with closed-form node values, order ∈ {0, 1, 2}.
[[nodiscard]] EvalResult exact_moment_result(const OperatorSpec& spec, double x, unsigned order,
                                             const Truncation& trunc = {},
                                             SeriesForm form = SeriesForm::joint);
[[nodiscard]] double exact_moment(const OperatorSpec& spec, double x, unsigned order,
                                  const Truncation& trunc = {});

/// Same moment through the numeric q-integral at every node (independent path).
[[nodiscard]] EvalResult numeric_moment_result(const OperatorSpec& spec, double x, unsigned order,
                                               const Truncation& trunc = {});

struct MomentBounds {
    double bound1 = 0.0;  // x(1−β) + 1/([2]_q [n]_q)
    double bound2 = 0.0;  // 1/([3]_q [n]_q²) + xβ/[n]_q (1 + 2/[2]_q) + 2x²(1−β)
};

/// Defined for any n ≥ 1 (the operator itself needs n ≥ 2).
[[nodiscard]] MomentBounds moment_bounds(std::size_t n, QValue q, double beta_r, double x);
[[nodiscard]] MomentBounds moment_bounds(const OperatorSpec& spec, double x);

/**
 * The same bounds with [n−1]_q in place of [n]_q in the x-free terms:
 * x(1−β) + 1/([2]_q [n−1]_q) and 1/([3]_q [n−1]_q²) + xβ/[n]_q (1 + 2/[2]_q) + 2x²(1−β).
 * The stated forms rely on q^l/[n+l−1]_q ≤ 1/[n]_q, which fails at l = 0, so they
 * are violated near x = 0; these hold (with equality at x = 0). Needs n ≥ 2.
 */
[[nodiscard]] MomentBounds corrected_moment_bounds(std::size_t n, QValue q, double beta_r, double x);

/// γ = 4(1−β) + (β(1 + 2/[2]_q) + 2/[2]_q)/[n]_q + 1/([3]_q [n]_q²).
[[nodiscard]] double gamma_bound(std::size_t n, QValue q, double beta_r);

/// Every moment and bound at one point. Throws std::invalid_argument for x ∉ [0, 1].
[[nodiscard]] MomentReport moment_report(const OperatorSpec& spec, double x,
                                         const Truncation& trunc = {},
                                         SeriesForm form = SeriesForm::joint);

/// A function sampled on the uniform grid i/(G−1), i = 0..G−1, of [0, 1].
class GridFunction {
public:
    /// Throws std::invalid_argument for fewer than two samples.
    explicit GridFunction(std::vector<double> values);
    GridFunction(const RealFunction& f, std::size_t points = 257);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double spacing() const noexcept { return 1.0 / static_cast<double>(size() - 1); }
    [[nodiscard]] double node(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::vector<double> nodes() const;

    /// Piecewise-linear interpolant on [0, 1].
    [[nodiscard]] double operator()(double x) const;

private:
    std::vector<double> values_;
};

/**
 * max |f(s) − f(x)| over grid pairs with |s − x| ≤ δ. Throws
 * std::invalid_argument if δ ≤ 0 or the grid spacing exceeds δ/8.
 */
[[nodiscard]] double modulus_of_continuity(const GridFunction& f, double delta);

/// 2 ω_f(√γ_{n,q}(β)).
[[nodiscard]] double rate_bound(const GridFunction& f, std::size_t n, QValue q, double beta_r);

}  // namespace qkorovkin
