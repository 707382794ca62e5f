#include "qkorovkin/qcore.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qkorovkin {

QValue::QValue(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream msg;
        msg << "q must lie strictly inside (0, 1), got " << q;
        throw std::invalid_argument(msg.str());
    }
}

QIntegralBounds::QIntegralBounds(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && alpha < beta)) {
        std::ostringstream msg;
        msg << "q-integral bounds need 0 <= alpha < beta, got [" << alpha << ", " << beta << "]";
        throw std::invalid_argument(msg.str());
    }
}

double q_integer(std::size_t n, QValue q) {
    const double qv = q.value();
    double result = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        result = 1.0 + qv * result;
    }
    return result;
}

double q_pochhammer(double rho, QValue q, std::size_t n) {
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        product *= 1.0 - rho * std::pow(q.value(), static_cast<double>(i));
    }
    return product;
}

QSum q_riemann_average(const RealFunction& f, QIntegralBounds bounds, QValue q, double tail_tol) {
    if (!(tail_tol > 0.0)) {
        throw std::invalid_argument("q-integral tail tolerance must be positive");
    }
    const double qv = q.value();
    const double alpha = bounds.alpha();
    const double width = bounds.width();

    auto sample = [&f](double s) {
        const double v = f(s);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "non-finite integrand sample f(" << s << ") = " << v;
            throw std::domain_error(msg.str());
        }
        return v;
    };

    QSum out;
    const double f_alpha = sample(alpha);
    out.sup_abs = std::abs(f_alpha);

    // Weights q^j − q^{j+1} are formed from the stored powers, so they telescope
    // to 1 − q^J exactly and constants come out exact even for q near 1, where
    // J runs into the tens of thousands. Neumaier summation keeps the rest tight.
    double sum = 0.0;
    double carry = 0.0;
    auto add = [&](double term) {
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    };
    double qj = 1.0;  // q^j
    std::size_t j = 0;
    do {
        const double v = sample(alpha + width * qj);
        out.sup_abs = std::max(out.sup_abs, std::abs(v));
        const double next = qj * qv;
        add(v * (qj - next));
        qj = next;
        ++j;
    } while (out.sup_abs * qj > tail_tol && qj > std::numeric_limits<double>::min());
    add(qj * f_alpha);

    out.value = sum + carry;
    out.terms = j;
    return out;
}

double q_riemann_integral(const RealFunction& f, QIntegralBounds bounds, QValue q, double tail_tol) {
    if (!(tail_tol > 0.0)) {
        throw std::invalid_argument("q-integral tail tolerance must be positive");
    }
    const double width = bounds.width();
    return width * q_riemann_average(f, bounds, q, tail_tol / width).value;
}

double q_riemann_monomial_average(unsigned m, QIntegralBounds bounds, QValue q) {
    const double alpha = bounds.alpha();
    const double width = bounds.width();
    double total = 0.0;
    double binom = 1.0;  // C(m, k)
    double qint = 0.0;   // [k+1]_q, built alongside k
    for (unsigned k = 0; k <= m; ++k) {
        qint = 1.0 + q.value() * qint;
        total += binom * std::pow(alpha, static_cast<double>(m - k)) *
                 std::pow(width, static_cast<double>(k)) / qint;
        binom = binom * static_cast<double>(m - k) / static_cast<double>(k + 1);
    }
    return total;
}

double q_riemann_monomial(unsigned m, QIntegralBounds bounds, QValue q) {
    return bounds.width() * q_riemann_monomial_average(m, bounds, q);
}

}  // namespace qkorovkin
