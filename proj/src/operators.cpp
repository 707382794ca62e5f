#include "qkorovkin/operators.hpp"

#include "qkorovkin/summability.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qkorovkin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kSupScanPoints = 257;

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// log Σ_{i=0}^{p} exp(a[i] + b[p−i]), two passes for a stable shift.
double log_conv_entry(const std::vector<double>& a, const std::vector<double>& b, std::size_t p) {
    double top = kNegInf;
    for (std::size_t i = 0; i <= p; ++i) {
        top = std::max(top, a[i] + b[p - i]);
    }
    if (top == kNegInf) {
        return kNegInf;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i <= p; ++i) {
        sum += std::exp(a[i] + b[p - i] - top);
    }
    return top + std::log(sum);
}

// [k]_q for k = 0, 1, 2, ... grown on demand by [k+1]_q = 1 + q [k]_q.
class QIntegerTable {
public:
    explicit QIntegerTable(double q) : q_(q), values_{0.0} {}

    double operator()(std::size_t k) {
        while (values_.size() <= k) {
            values_.push_back(1.0 + q_ * values_.back());
        }
        return values_[k];
    }

private:
    double q_;
    std::vector<double> values_;
};

// Left end and width of the l-th q-node interval [[l]/[n+l−1], [l+1]/[n+l−1]].
struct NodeInterval {
    double left;
    double width;
};

NodeInterval q_node_interval(QIntegerTable& qint, std::size_t n, double q, std::size_t l) {
    const double denom = qint(n + l - 1);
    return {qint(l) / denom, std::pow(q, static_cast<double>(l)) / denom};
}

class QIntegralNodes final : public NodeRule {
public:
    QIntegralNodes(std::size_t n, QValue q, RealFunction f, double tol)
        : n_(n), q_(q), f_(std::move(f)), tol_(tol), qint_(q.value()) {}

    double value(std::size_t l) override {
        const auto [left, width] = q_node_interval(qint_, n_, q_.value(), l);
        const double right = std::min(left + width, 1.0);
        if (!(right > left)) {
            const double v = f_(left);
            sup_ = std::max(sup_, std::abs(v));
            return v;
        }
        const QSum s = q_riemann_average(f_, QIntegralBounds(left, right), q_, tol_);
        sup_ = std::max(sup_, s.sup_abs);
        return s.value;
    }
    [[nodiscard]] double sup_abs() const override { return sup_; }

private:
    std::size_t n_;
    QValue q_;
    RealFunction f_;
    double tol_;
    QIntegerTable qint_;
    double sup_ = 0.0;
};

class QMonomialNodes final : public NodeRule {
public:
    QMonomialNodes(std::size_t n, QValue q, unsigned m) : n_(n), q_(q), m_(m), qint_(q.value()) {}

    double value(std::size_t l) override {
        const auto [left, width] = q_node_interval(qint_, n_, q_.value(), l);
        // far out the interval is narrower than the spacing of doubles near left
        if (!(left + width > left)) {
            return std::pow(left, static_cast<double>(m_));
        }
        return q_riemann_monomial_average(m_, QIntegralBounds(left, left + width), q_);
    }
    // s^m on [0, 1]
    [[nodiscard]] double sup_abs() const override { return 1.0; }

private:
    std::size_t n_;
    QValue q_;
    unsigned m_;
    QIntegerTable qint_;
};

class QSampleNodes final : public NodeRule {
public:
    QSampleNodes(std::size_t n, QValue q, RealFunction f)
        : n_(n), f_(std::move(f)), qint_(q.value()) {}

    double value(std::size_t l) override {
        const double v = f_(qint_(l) / qint_(n_ + l - 1));
        sup_ = std::max(sup_, std::abs(v));
        return v;
    }
    [[nodiscard]] double sup_abs() const override { return sup_; }

private:
    std::size_t n_;
    RealFunction f_;
    QIntegerTable qint_;
    double sup_ = 0.0;
};

class ClassicalIntegralNodes final : public NodeRule {
public:
    ClassicalIntegralNodes(std::size_t n, RealFunction f) : n_(n), f_(std::move(f)) {}

    double value(std::size_t l) override {
        const double denom = static_cast<double>(n_ + l - 1);
        const double a = static_cast<double>(l) / denom;
        const double b = std::min(static_cast<double>(l + 1) / denom, 1.0);
        auto g = [this](double s) {
            const double v = f_(s);
            sup_ = std::max(sup_, std::abs(v));
            return v;
        };
        using boost::math::quadrature::gauss_kronrod;
        const double integral = gauss_kronrod<double, 31>::integrate(g, a, b, 12, 1e-14);
        return integral / (b - a);
    }
    [[nodiscard]] double sup_abs() const override { return sup_; }

private:
    std::size_t n_;
    RealFunction f_;
    double sup_ = 0.0;
};

class ClassicalSampleNodes final : public NodeRule {
public:
    ClassicalSampleNodes(std::size_t n, RealFunction f) : n_(n), f_(std::move(f)) {}

    double value(std::size_t l) override {
        const double v = f_(static_cast<double>(l) / static_cast<double>(n_ + l - 1));
        sup_ = std::max(sup_, std::abs(v));
        return v;
    }
    [[nodiscard]] double sup_abs() const override { return sup_; }

private:
    std::size_t n_;
    RealFunction f_;
    double sup_ = 0.0;
};

double grid_sup_abs(const RealFunction& f) {
    double sup = 0.0;
    for (std::size_t i = 0; i < kSupScanPoints; ++i) {
        sup = std::max(sup, std::abs(f(static_cast<double>(i) / (kSupScanPoints - 1))));
    }
    return sup;
}

void check_classical_args(std::size_t n, const std::vector<double>& betas) {
    if (n < 2) {
        throw std::invalid_argument("operator index n must be at least 2");
    }
    if (betas.empty()) {
        throw std::invalid_argument("operator needs at least one beta sequence");
    }
    for (const double b : betas) {
        if (!(b > 0.0 && b < 1.0)) {
            std::ostringstream msg;
            msg << "each beta must lie in (0, 1), got " << b;
            throw std::invalid_argument(msg.str());
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameter types

OperatorSpec::OperatorSpec(std::size_t n, QValue q, std::vector<double> betas)
    : n_(n), q_(q), betas_(std::move(betas)) {
    check_classical_args(n_, betas_);
}

Truncation::Truncation(double mass_tol, std::size_t p_max) : mass_tol_(mass_tol), p_max_(p_max) {
    if (!(mass_tol > 0.0 && mass_tol < 1.0)) {
        throw std::invalid_argument("mass_tol must lie in (0, 1)");
    }
    if (p_max < 1) {
        throw std::invalid_argument("p_max must be at least 1");
    }
}

double ParameterRule::at(std::size_t n) const {
    switch (kind) {
        case Kind::reciprocal:
            return 1.0 - param / static_cast<double>(n + 1);
        case Kind::constant:
            return param;
    }
    return param;
}

SequenceSpec::SequenceSpec(std::size_t r, ParameterRule q_rule, std::vector<ParameterRule> beta_rules)
    : r_(r), q_rule_(q_rule), beta_rules_(std::move(beta_rules)) {
    if (r_ == 0) {
        throw std::invalid_argument("sequence spec needs r >= 1");
    }
    if (beta_rules_.size() != 1 && beta_rules_.size() != r_) {
        throw std::invalid_argument("give either one beta rule or one per variable");
    }
    auto check = [](const ParameterRule& rule, const char* what) {
        if (!(rule.param > 0.0) || !std::isfinite(rule.param) ||
            (rule.kind == ParameterRule::Kind::constant && !(rule.param < 1.0))) {
            std::ostringstream msg;
            msg << what << " rule parameter out of range: " << rule.param;
            throw std::invalid_argument(msg.str());
        }
        // reciprocal rules need 1 − c/(n+1) > 0 from n = 2 on
        if (rule.kind == ParameterRule::Kind::reciprocal && !(rule.param < 3.0)) {
            std::ostringstream msg;
            msg << what << " reciprocal rule needs 0 < c < 3, got " << rule.param;
            throw std::invalid_argument(msg.str());
        }
    };
    check(q_rule_, "q");
    for (const auto& b : beta_rules_) {
        check(b, "beta");
    }
}

SequenceSpec SequenceSpec::standard(std::size_t r) {
    return SequenceSpec(r, ParameterRule{ParameterRule::Kind::reciprocal, 1.0},
                        {ParameterRule{ParameterRule::Kind::reciprocal, 1.0}});
}

double SequenceSpec::beta_at(std::size_t k, std::size_t n) const {
    const auto& rule = beta_rules_.size() == 1 ? beta_rules_.front() : beta_rules_.at(k);
    return rule.at(n);
}

OperatorSpec SequenceSpec::at(std::size_t n) const {
    std::vector<double> betas(r_);
    for (std::size_t k = 0; k < r_; ++k) {
        betas[k] = beta_at(k, n);
    }
    return OperatorSpec(n, QValue(q_at(n)), std::move(betas));
}

double SequenceSpec::limit_a() const {
    if (q_rule_.kind == ParameterRule::Kind::reciprocal) {
        return std::exp(-q_rule_.param);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool SequenceSpec::satisfies_standing_assumption() const {
    return q_rule_.kind == ParameterRule::Kind::reciprocal;
}

// ---------------------------------------------------------------------------
// Evaluator

struct OperatorEvaluator::Impl {
    Kernel kernel;
    std::unique_ptr<NodeRule> nodes;
    SeriesForm form;
    double sup_hint = 0.0;
    double log_q = 0.0;

    std::vector<double> node_values;

    // Joint tables, all in log space: per-variable coefficients, the running
    // convolution of the first r−1 variables, and the x-free inner sums.
    std::vector<double> phi_cumulative;
    std::vector<double> log_beta;
    std::vector<std::vector<double>> log_coeff;
    std::vector<std::vector<double>> partial_conv;
    std::vector<double> a_pos, a_neg, a_mass;
    std::vector<double> g_pos, g_neg, g_mass;

    Impl(Kernel k, std::unique_ptr<NodeRule> rule, SeriesForm f)
        : kernel(std::move(k)), nodes(std::move(rule)), form(f) {
        if (kernel.q_family) {
            log_q = std::log(QValue(kernel.q).value());
        }
        check_classical_args(kernel.n, kernel.betas);
        for (const double b : kernel.betas) {
            log_beta.push_back(std::log(b));
        }
        log_coeff.resize(kernel.betas.size());
        partial_conv.resize(kernel.betas.size() > 1 ? kernel.betas.size() - 1 : 0);
    }

    double node(std::size_t l) {
        while (node_values.size() <= l) {
            node_values.push_back(nodes->value(node_values.size()));
        }
        return node_values[l];
    }

    // c(l) / c(l−1) without the z factor, l ≥ 1.
    [[nodiscard]] double coeff_ratio(std::size_t l) const {
        const double n = static_cast<double>(kernel.n);
        const double ld = static_cast<double>(l);
        if (kernel.q_family) {
            return std::expm1((n + ld - 1.0) * log_q) / std::expm1(ld * log_q);
        }
        return (n + ld - 1.0) / ld;
    }

    // log of one prefactor: (xβ; q)_n or (1 − xβ)^n.
    [[nodiscard]] double log_prefactor(double xb) const {
        if (kernel.q_family) {
            double acc = 0.0;
            double qi = 1.0;
            for (std::size_t i = 0; i < kernel.n; ++i) {
                acc += std::log1p(-xb * qi);
                qi *= kernel.q;
            }
            return acc;
        }
        return static_cast<double>(kernel.n) * std::log1p(-xb);
    }

    void grow_joint(std::size_t p_target) {
        const std::size_t r = kernel.betas.size();
        for (std::size_t p = g_mass.size(); p <= p_target; ++p) {
            phi_cumulative.push_back(p == 0 ? 0.0
                                            : phi_cumulative.back() + std::log(coeff_ratio(p)));
            const double pd = static_cast<double>(p);
            for (std::size_t k = 0; k < r; ++k) {
                log_coeff[k].push_back(pd * log_beta[k] + phi_cumulative[p]);
            }
            if (r > 1) {
                partial_conv[0].push_back(log_coeff[0][p]);
                for (std::size_t j = 1; j + 1 < r; ++j) {
                    partial_conv[j].push_back(log_conv_entry(partial_conv[j - 1], log_coeff[j], p));
                }
            }
            const double nv = node(p);
            const double lc = log_coeff[r - 1][p];
            a_pos.push_back(lc + safe_log(nv));
            a_neg.push_back(lc + safe_log(-nv));
            a_mass.push_back(lc);
            if (r == 1) {
                g_pos.push_back(a_pos[p]);
                g_neg.push_back(a_neg[p]);
                g_mass.push_back(a_mass[p]);
            } else {
                const auto& others = partial_conv[r - 2];
                g_pos.push_back(log_conv_entry(a_pos, others, p));
                g_neg.push_back(log_conv_entry(a_neg, others, p));
                g_mass.push_back(log_conv_entry(a_mass, others, p));
            }
        }
    }

    [[nodiscard]] double sup_estimate() const { return std::max(sup_hint, nodes->sup_abs()); }

    EvalResult finish(double value, double mass, std::size_t p_used, const Truncation& trunc) const {
        EvalResult out;
        out.value = value;
        out.captured_mass = mass;
        out.p_used = p_used;
        out.reached_mass_target = 1.0 - mass <= trunc.mass_tol();
        out.tail_bound = sup_estimate() * std::max(0.0, 1.0 - mass);
        return out;
    }

    EvalResult evaluate_joint(double x, const Truncation& trunc) {
        double log_pref = 0.0;
        for (const double b : kernel.betas) {
            log_pref += log_prefactor(x * b);
        }
        if (x == 0.0) {
            grow_joint(0);
            const double v = std::exp(g_pos[0]) - std::exp(g_neg[0]);
            return finish(v, std::exp(g_mass[0]), 0, trunc);
        }
        const double log_x = std::log(x);
        double value = 0.0;
        double mass = 0.0;
        std::size_t p = 0;
        for (;; ++p) {
            grow_joint(p);
            const double t = log_pref + static_cast<double>(p) * log_x;
            mass += std::exp(t + g_mass[p]);
            value += std::exp(t + g_pos[p]) - std::exp(t + g_neg[p]);
            if (1.0 - mass <= trunc.mass_tol() || p >= trunc.p_max()) {
                break;
            }
        }
        return finish(value, mass, p, trunc);
    }

    EvalResult evaluate_marginal(double x, const Truncation& trunc) {
        const double beta = kernel.betas.back();
        if (x == 0.0) {
            return finish(node(0), 1.0, 0, trunc);
        }
        // Weight recurrence w_l = w_{l−1} · xβ · c(l)/c(l−1). The prefactor can
        // underflow for large n, so the walk starts in log space.
        double log_w = log_prefactor(x * beta);
        bool linear = log_w > -700.0;
        double w = linear ? std::exp(log_w) : 0.0;
        double value = 0.0;
        double mass = 0.0;
        std::size_t l = 0;
        for (;; ++l) {
            if (w > 0.0) {
                value += w * node(l);
                mass += w;
            }
            if (1.0 - mass <= trunc.mass_tol() || l >= trunc.p_max()) {
                break;
            }
            const double ratio = x * beta * coeff_ratio(l + 1);
            if (linear) {
                w *= ratio;
            } else {
                log_w += std::log(ratio);
                if (log_w > -700.0) {
                    linear = true;
                    w = std::exp(log_w);
                }
            }
        }
        return finish(value, mass, l, trunc);
    }
};

OperatorEvaluator::OperatorEvaluator(Kernel kernel, std::unique_ptr<NodeRule> nodes, SeriesForm form)
    : impl_(std::make_unique<Impl>(std::move(kernel), std::move(nodes), form)) {}

OperatorEvaluator::~OperatorEvaluator() = default;
OperatorEvaluator::OperatorEvaluator(OperatorEvaluator&&) noexcept = default;
OperatorEvaluator& OperatorEvaluator::operator=(OperatorEvaluator&&) noexcept = default;

EvalResult OperatorEvaluator::evaluate(double x, const Truncation& trunc) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "evaluation point must lie in [0, 1], got " << x;
        throw std::invalid_argument(msg.str());
    }
    return impl_->form == SeriesForm::joint ? impl_->evaluate_joint(x, trunc)
                                            : impl_->evaluate_marginal(x, trunc);
}

std::vector<EvalResult> OperatorEvaluator::evaluate_grid(std::span<const double> xs,
                                                         const Truncation& trunc) {
    std::vector<EvalResult> out;
    out.reserve(xs.size());
    for (const double x : xs) {
        out.push_back(evaluate(x, trunc));
    }
    return out;
}

void OperatorEvaluator::note_sup_abs(double s) { impl_->sup_hint = std::max(impl_->sup_hint, s); }

// ---------------------------------------------------------------------------
// Node rules and factories

std::unique_ptr<NodeRule> q_integral_nodes(std::size_t n, QValue q, RealFunction f, double tail_tol) {
    return std::make_unique<QIntegralNodes>(n, q, std::move(f), tail_tol);
}

std::unique_ptr<NodeRule> q_monomial_nodes(std::size_t n, QValue q, unsigned m) {
    return std::make_unique<QMonomialNodes>(n, q, m);
}

std::unique_ptr<NodeRule> q_sample_nodes(std::size_t n, QValue q, RealFunction f) {
    return std::make_unique<QSampleNodes>(n, q, std::move(f));
}

std::unique_ptr<NodeRule> classical_integral_nodes(std::size_t n, RealFunction f) {
    return std::make_unique<ClassicalIntegralNodes>(n, std::move(f));
}

std::unique_ptr<NodeRule> classical_sample_nodes(std::size_t n, RealFunction f) {
    return std::make_unique<ClassicalSampleNodes>(n, std::move(f));
}

namespace {

OperatorEvaluator::Kernel q_kernel(const OperatorSpec& spec) {
    return {true, spec.n(), spec.q().value(), {spec.betas().begin(), spec.betas().end()}};
}

}  // namespace

OperatorEvaluator make_K(const OperatorSpec& spec, RealFunction f, SeriesForm form, double node_tol) {
    const double sup = grid_sup_abs(f);
    OperatorEvaluator ev(q_kernel(spec), q_integral_nodes(spec.n(), spec.q(), std::move(f), node_tol),
                         form);
    ev.note_sup_abs(sup);
    return ev;
}

OperatorEvaluator make_K_monomial(const OperatorSpec& spec, unsigned m, SeriesForm form) {
    return OperatorEvaluator(q_kernel(spec), q_monomial_nodes(spec.n(), spec.q(), m), form);
}

OperatorEvaluator make_S(const OperatorSpec& spec, RealFunction f, SeriesForm form) {
    const double sup = grid_sup_abs(f);
    OperatorEvaluator ev(q_kernel(spec), q_sample_nodes(spec.n(), spec.q(), std::move(f)), form);
    ev.note_sup_abs(sup);
    return ev;
}

OperatorEvaluator make_classical(ClassicalKind kind, std::size_t n, std::vector<double> betas,
                                 RealFunction f, SeriesForm form) {
    const double sup = grid_sup_abs(f);
    auto nodes = kind == ClassicalKind::L ? classical_sample_nodes(n, std::move(f))
                                          : classical_integral_nodes(n, std::move(f));
    OperatorEvaluator ev({false, n, 0.5, std::move(betas)}, std::move(nodes), form);
    ev.note_sup_abs(sup);
    return ev;
}

double node_functional_K(const OperatorSpec& spec, std::size_t l_r, const RealFunction& f,
                         double tail_tol) {
    return q_integral_nodes(spec.n(), spec.q(), f, tail_tol)->value(l_r);
}

EvalResult evaluate_K(const OperatorSpec& spec, const RealFunction& f, double x,
                      const Truncation& trunc) {
    return make_K(spec, f).evaluate(x, trunc);
}

EvalResult evaluate_S(const OperatorSpec& spec, const RealFunction& f, double x,
                      const Truncation& trunc) {
    return make_S(spec, f).evaluate(x, trunc);
}

EvalResult evaluate_classical(ClassicalKind kind, std::size_t n, std::vector<double> betas,
                              const RealFunction& f, double x, const Truncation& trunc) {
    return make_classical(kind, n, std::move(betas), f).evaluate(x, trunc);
}

double auxiliary_factor(std::size_t m) { return 1.0 + static_cast<double>(squares_indicator(m)); }

EvalResult evaluate_P_auxiliary(const OperatorSpec& spec, std::size_t m, const RealFunction& f,
                                double x, const Truncation& trunc) {
    EvalResult out = evaluate_K(spec, f, x, trunc);
    const double factor = auxiliary_factor(m);
    out.value *= factor;
    out.tail_bound *= factor;
    return out;
}

}  // namespace qkorovkin
