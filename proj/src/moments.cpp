#include "qkorovkin/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qkorovkin {

EvalResult exact_moment_result(const OperatorSpec& spec, double x, unsigned order,
                               const Truncation& trunc, SeriesForm form) {
    if (order > 2) {
        throw std::invalid_argument("moment order must be 0, 1 or 2");
    }
    return make_K_monomial(spec, order, form).evaluate(x, trunc);
}

double exact_moment(const OperatorSpec& spec, double x, unsigned order, const Truncation& trunc) {
    return exact_moment_result(spec, x, order, trunc).value;
}

EvalResult numeric_moment_result(const OperatorSpec& spec, double x, unsigned order,
                                 const Truncation& trunc) {
    const auto m = static_cast<double>(order);
    return evaluate_K(spec, [m](double s) { return std::pow(s, m); }, x, trunc);
}

MomentBounds moment_bounds(std::size_t n, QValue q, double beta_r, double x) {
    const double qn = q_integer(n, q);
    const double q2 = q_integer(2, q);
    const double q3 = q_integer(3, q);
    MomentBounds out;
    out.bound1 = x * (1.0 - beta_r) + 1.0 / (q2 * qn);
    out.bound2 = 1.0 / (q3 * qn * qn) + x * beta_r / qn * (1.0 + 2.0 / q2) +
                 2.0 * x * x * (1.0 - beta_r);
    return out;
}

MomentBounds moment_bounds(const OperatorSpec& spec, double x) {
    return moment_bounds(spec.n(), spec.q(), spec.beta_r(), x);
}

MomentBounds corrected_moment_bounds(std::size_t n, QValue q, double beta_r, double x) {
    if (n < 2) {
        throw std::invalid_argument("corrected moment bounds need n >= 2");
    }
    const double qn = q_integer(n, q);
    const double qn1 = q_integer(n - 1, q);
    const double q2 = q_integer(2, q);
    const double q3 = q_integer(3, q);
    MomentBounds out;
    out.bound1 = x * (1.0 - beta_r) + 1.0 / (q2 * qn1);
    out.bound2 = 1.0 / (q3 * qn1 * qn1) + x * beta_r / qn * (1.0 + 2.0 / q2) +
                 2.0 * x * x * (1.0 - beta_r);
    return out;
}

double gamma_bound(std::size_t n, QValue q, double beta_r) {
    const double qn = q_integer(n, q);
    const double q2 = q_integer(2, q);
    const double q3 = q_integer(3, q);
    return 4.0 * (1.0 - beta_r) + (beta_r * (1.0 + 2.0 / q2) + 2.0 / q2) / qn +
           1.0 / (q3 * qn * qn);
}

MomentReport moment_report(const OperatorSpec& spec, double x, const Truncation& trunc,
                           SeriesForm form) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("moment point must lie in [0, 1]");
    }
    const EvalResult m0 = exact_moment_result(spec, x, 0, trunc, form);
    const EvalResult m1 = exact_moment_result(spec, x, 1, trunc, form);
    const EvalResult m2 = exact_moment_result(spec, x, 2, trunc, form);
    const MomentBounds bounds = moment_bounds(spec, x);

    MomentReport out;
    out.x = x;
    out.moment0 = m0.value;
    out.moment1 = m1.value;
    out.moment2 = m2.value;
    out.bound1 = bounds.bound1;
    out.bound2 = bounds.bound2;
    out.central2 = m2.value - 2.0 * x * m1.value + x * x * m0.value;
    out.gamma = gamma_bound(spec.n(), spec.q(), spec.beta_r());
    out.slack0 = m0.tail_bound;
    out.slack1 = m1.tail_bound;
    out.slack2 = m2.tail_bound;
    return out;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw std::invalid_argument("grid function needs at least two samples");
    }
}

GridFunction::GridFunction(const RealFunction& f, std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("grid function needs at least two samples");
    }
    values_.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        values_[i] = f(static_cast<double>(i) / static_cast<double>(points - 1));
    }
}

std::vector<double> GridFunction::nodes() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = node(i);
    }
    return out;
}

double GridFunction::operator()(double x) const {
    const double pos = std::clamp(x, 0.0, 1.0) * static_cast<double>(size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), size() - 2);
    const double t = pos - static_cast<double>(i);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

double modulus_of_continuity(const GridFunction& f, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("modulus of continuity needs delta > 0");
    }
    const double h = f.spacing();
    if (h > delta / 8.0 * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "grid too coarse for delta = " << delta << ": spacing " << h << " > delta/8";
        throw std::invalid_argument(msg.str());
    }
    // widest index gap whose distance is still ≤ delta; the nudge absorbs
    // rounding when delta is an exact multiple of the spacing
    const auto window = static_cast<std::size_t>(std::floor(delta / h + 1e-9));
    const auto v = f.values();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t hi = std::min(v.size() - 1, i + window);
        for (std::size_t j = i + 1; j <= hi; ++j) {
            best = std::max(best, std::abs(v[j] - v[i]));
        }
    }
    return best;
}

double rate_bound(const GridFunction& f, std::size_t n, QValue q, double beta_r) {
    return 2.0 * modulus_of_continuity(f, std::sqrt(gamma_bound(n, q, beta_r)));
}

}  // namespace qkorovkin
