#pragma once

/**
 * @file qcore.hpp
 * @brief Scalar q-calculus primitives.
 *
 * q-integers, q-Pochhammer symbols and the Riemann-type q-integral
 *
 *     ∫_α^β f(s) d_q^R s = (1 − q)(β − α) Σ_{j≥0} f(α + (β − α) q^j) q^j
 *
 * together with its closed form on monomials. All routines are pure and
 * work in 64-bit binary floating point.
 */

#include <cstddef>
#include <functional>

namespace qkorovkin {

using RealFunction = std::function<double(double)>;

/// Deformation parameter q, strictly inside (0, 1).
class QValue {
public:
    explicit QValue(double q);

    [[nodiscard]] double value() const noexcept { return q_; }

private:
    double q_;
};

/// Endpoints of a q-integral, 0 ≤ alpha < beta.
class QIntegralBounds {
public:
    QIntegralBounds(double alpha, double beta);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double width() const noexcept { return beta_ - alpha_; }

private:
    double alpha_;
    double beta_;
};

/// [n]_q = 1 + q + ... + q^{n-1}, evaluated by the recurrence [k+1]_q = 1 + q [k]_q.
[[nodiscard]] double q_integer(std::size_t n, QValue q);

/// (rho; q)_n = (1 − rho)(1 − rho q) ... (1 − rho q^{n-1}); 1 for n = 0.
[[nodiscard]] double q_pochhammer(double rho, QValue q, std::size_t n);

/// Value of a truncated q-sum plus what the sampling saw along the way.
struct QSum {
    double value = 0.0;
    double sup_abs = 0.0;   ///< max |f| over the drawn samples
    std::size_t terms = 0;  ///< number of geometric nodes summed (J)
};

/**
 * q-average of f over [alpha, beta]:
 *
 *     (1 − q) Σ_{j<J} f(α + (β − α) q^j) q^j  +  q^J f(α)
 *
 * J is the first index with sup|f| · q^J ≤ tail_tol (sup over samples already
 * drawn). The last term closes the geometric tail with its limit value f(α);
 * it makes constants exact and leaves a residual of order q^J · osc f near α.
 *
 * Throws std::invalid_argument if tail_tol ≤ 0, std::domain_error on a
 * non-finite sample.
 */
[[nodiscard]] QSum q_riemann_average(const RealFunction& f, QIntegralBounds bounds, QValue q,
                                     double tail_tol = 1e-12);

/**
 * Riemann-type q-integral of f over [alpha, beta], with prefactor (β − α).
 * Stops where the analytic tail bound (β − α) · sup|f| · q^J ≤ tail_tol.
 */
[[nodiscard]] double q_riemann_integral(const RealFunction& f, QIntegralBounds bounds, QValue q,
                                        double tail_tol = 1e-12);

/// Exact q-integral of s^m: Σ_k C(m,k) α^{m−k} (β−α)^{k+1} / [k+1]_q.
[[nodiscard]] double q_riemann_monomial(unsigned m, QIntegralBounds bounds, QValue q);

/// q-average of s^m (the monomial integral divided by β − α).
[[nodiscard]] double q_riemann_monomial_average(unsigned m, QIntegralBounds bounds, QValue q);

}  // namespace qkorovkin
