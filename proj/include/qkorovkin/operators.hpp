#pragma once

/**
 * @file operators.hpp
 * @brief Evaluation engines for the q-Lagrange positive linear operators.
 *
 * Every operator here has the shape
 *
 *     T(f; x) = { Π_k P(x β_k) } Σ_p x^p Σ_{l_1+...+l_r = p} Π_k c(l_k) β_k^{l_k} · N(l_r)
 *
 * where P is the prefactor ((xβ; q)_n or (1 − xβ)^n), c(l) the single-variable
 * coefficient ((q^n; q)_l / (q; q)_l or (n)_l / l!), and N(l_r) a node value
 * that depends on f and on l_r only:
 *
 *   - K (q-integral):  [n+l−1]_q q^{−l} ∫ f d_q^R s over [[l]_q/[n+l−1]_q, [l+1]_q/[n+l−1]_q]
 *   - S (q-sampling):  f([l]_q / [n+l−1]_q)
 *   - E (classical integral): (n+l−1) ∫ f ds over [l/(n+l−1), (l+1)/(n+l−1)]
 *   - L (classical sampling): f(l / (n+l−1))
 *
 * All weights are positive and sum to one, so the outer series is truncated
 * by captured probability mass and the result carries an honest tail bound.
 */

#include "qkorovkin/qcore.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qkorovkin {

/// The tuple (r, n, q, β^(1..r)) of one operator instance.
class OperatorSpec {
public:
    /// Throws std::invalid_argument unless n ≥ 2, betas non-empty and each β in (0, 1).
    OperatorSpec(std::size_t n, QValue q, std::vector<double> betas);

    [[nodiscard]] std::size_t r() const noexcept { return betas_.size(); }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] QValue q() const noexcept { return q_; }
    [[nodiscard]] std::span<const double> betas() const noexcept { return betas_; }
    [[nodiscard]] double beta_r() const noexcept { return betas_.back(); }

private:
    std::size_t n_;
    QValue q_;
    std::vector<double> betas_;
};

/// Outer-series cutoff: stop once captured mass ≥ 1 − mass_tol, or at degree p_max.
class Truncation {
public:
    Truncation() = default;
    Truncation(double mass_tol, std::size_t p_max);

    [[nodiscard]] double mass_tol() const noexcept { return mass_tol_; }
    [[nodiscard]] std::size_t p_max() const noexcept { return p_max_; }

private:
    double mass_tol_ = 1e-10;
    std::size_t p_max_ = 4096;
};

struct EvalResult {
    double value = 0.0;
    double captured_mass = 0.0;
    std::size_t p_used = 0;
    double tail_bound = 0.0;  ///< sup|f| · (1 − captured_mass), clamped at 0
    bool reached_mass_target = false;
};

/// One rule for a parameter sequence indexed by n.
struct ParameterRule {
    enum class Kind { reciprocal, constant };
    Kind kind = Kind::reciprocal;
    double param = 1.0;

    /// reciprocal: 1 − param/(n+1); constant: param.
    [[nodiscard]] double at(std::size_t n) const;
};

/**
 * Rules generating q_n and β_n^(k). The reciprocal rule q_n = 1 − c/(n+1)
 * gives q_n → 1 and q_n^n → e^{−c}.
 */
class SequenceSpec {
public:
    SequenceSpec(std::size_t r, ParameterRule q_rule, std::vector<ParameterRule> beta_rules);

    /// q_n = 1 − 1/(n+1), β_n^(k) = n/(n+1) for every k.
    [[nodiscard]] static SequenceSpec standard(std::size_t r);

    [[nodiscard]] std::size_t r() const noexcept { return r_; }
    [[nodiscard]] double q_at(std::size_t n) const { return q_rule_.at(n); }
    [[nodiscard]] double beta_at(std::size_t k, std::size_t n) const;
    [[nodiscard]] OperatorSpec at(std::size_t n) const;

    /// lim q_n^n; NaN when the rule does not drive q_n to 1.
    [[nodiscard]] double limit_a() const;
    [[nodiscard]] bool satisfies_standing_assumption() const;

    [[nodiscard]] const ParameterRule& q_rule() const noexcept { return q_rule_; }
    [[nodiscard]] std::span<const ParameterRule> beta_rules() const noexcept { return beta_rules_; }

private:
    std::size_t r_;
    ParameterRule q_rule_;
    std::vector<ParameterRule> beta_rules_;
};

/// Supplies N(l) for one operator and remembers the largest |f| it has seen.
class NodeRule {
public:
    virtual ~NodeRule() = default;
    virtual double value(std::size_t l) = 0;
    [[nodiscard]] virtual double sup_abs() const = 0;
};

enum class SeriesForm {
    joint,     ///< outer series in the total degree p, truncated by joint mass
    marginal,  ///< series in l_r alone; the other variables sum out exactly
};

enum class ClassicalKind { L, E };

/**
 * Evaluates one operator at many points, caching coefficient tables and
 * node values between calls. Not thread-safe; use one instance per thread.
 */
class OperatorEvaluator {
public:
    struct Kernel {
        bool q_family = true;
        std::size_t n = 2;
        double q = 0.5;  // ignored for the classical family
        std::vector<double> betas;
    };

    OperatorEvaluator(Kernel kernel, std::unique_ptr<NodeRule> nodes, SeriesForm form);
    ~OperatorEvaluator();
    OperatorEvaluator(OperatorEvaluator&&) noexcept;
    OperatorEvaluator& operator=(OperatorEvaluator&&) noexcept;

    /// Throws std::invalid_argument for x outside [0, 1].
    EvalResult evaluate(double x, const Truncation& trunc);
    std::vector<EvalResult> evaluate_grid(std::span<const double> xs, const Truncation& trunc);

    /// Raises the sup|f| estimate used in tail bounds (e.g. from a grid scan).
    void note_sup_abs(double s);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Node rules.
[[nodiscard]] std::unique_ptr<NodeRule> q_integral_nodes(std::size_t n, QValue q, RealFunction f,
                                                         double tail_tol = 1e-12);
[[nodiscard]] std::unique_ptr<NodeRule> q_monomial_nodes(std::size_t n, QValue q, unsigned m);
[[nodiscard]] std::unique_ptr<NodeRule> q_sample_nodes(std::size_t n, QValue q, RealFunction f);
[[nodiscard]] std::unique_ptr<NodeRule> classical_integral_nodes(std::size_t n, RealFunction f);
[[nodiscard]] std::unique_ptr<NodeRule> classical_sample_nodes(std::size_t n, RealFunction f);

// Evaluator factories.
[[nodiscard]] OperatorEvaluator make_K(const OperatorSpec& spec, RealFunction f,
                                       SeriesForm form = SeriesForm::joint,
                                       double node_tol = 1e-12);
/// K on s^m with closed-form node values.
[[nodiscard]] OperatorEvaluator make_K_monomial(const OperatorSpec& spec, unsigned m,
                                                SeriesForm form = SeriesForm::joint);
[[nodiscard]] OperatorEvaluator make_S(const OperatorSpec& spec, RealFunction f,
                                       SeriesForm form = SeriesForm::joint);
[[nodiscard]] OperatorEvaluator make_classical(ClassicalKind kind, std::size_t n,
                                               std::vector<double> betas, RealFunction f,
                                               SeriesForm form = SeriesForm::joint);

/**
 * [n+l_r−1]_q q^{−l_r} ∫ f d_q^R s over the l_r-th node interval. The node
 * width is q^{l_r}/[n+l_r−1]_q, so this equals the q-average of f over the
 * interval; it is computed that way to avoid amplifying the truncation error.
 */
[[nodiscard]] double node_functional_K(const OperatorSpec& spec, std::size_t l_r,
                                       const RealFunction& f, double tail_tol = 1e-12);

[[nodiscard]] EvalResult evaluate_K(const OperatorSpec& spec, const RealFunction& f, double x,
                                    const Truncation& trunc = {});
[[nodiscard]] EvalResult evaluate_S(const OperatorSpec& spec, const RealFunction& f, double x,
                                    const Truncation& trunc = {});
[[nodiscard]] EvalResult evaluate_classical(ClassicalKind kind, std::size_t n,
                                            std::vector<double> betas, const RealFunction& f,
                                            double x, const Truncation& trunc = {});

/// 1 + x_m, x_m = 1 if m is a perfect square and 0 otherwise.
[[nodiscard]] double auxiliary_factor(std::size_t m);

/// (1 + x_m) K(f; x).
[[nodiscard]] EvalResult evaluate_P_auxiliary(const OperatorSpec& spec, std::size_t m,
                                              const RealFunction& f, double x,
                                              const Truncation& trunc = {});

}  // namespace qkorovkin
