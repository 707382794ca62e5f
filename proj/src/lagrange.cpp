#include "qkorovkin/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qkorovkin {

CoefficientSequence::CoefficientSequence(std::size_t n, double z, QValue q,
                                         std::vector<double> entries)
    : n_(n), z_(z), q_(q), entries_(std::move(entries)) {}

CoefficientSequence coefficient_sequence(std::size_t n, double z, QValue q, std::size_t length) {
    if (!(z > 0.0 && z < 1.0)) {
        std::ostringstream msg;
        msg << "coefficient sequence needs 0 < z < 1, got " << z;
        throw std::invalid_argument(msg.str());
    }
    if (n == 0 || length == 0) {
        throw std::invalid_argument("coefficient sequence needs n >= 1 and length >= 1");
    }
    const double qv = q.value();
    std::vector<double> entries(length);
    entries[0] = 1.0;
    for (std::size_t l = 1; l < length; ++l) {
        const double num = -std::expm1(static_cast<double>(n + l - 1) * std::log(qv));
        const double den = -std::expm1(static_cast<double>(l) * std::log(qv));
        entries[l] = entries[l - 1] * z * num / den;
    }
    return CoefficientSequence(n, z, q, std::move(entries));
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             std::size_t length) {
    std::vector<double> out(length, 0.0);
    if (a.empty() || b.empty()) {
        return out;
    }
    for (std::size_t p = 0; p < length; ++p) {
        const std::size_t lo = p >= b.size() ? p - b.size() + 1 : 0;
        const std::size_t hi = std::min(p, a.size() - 1);
        double acc = 0.0;
        for (std::size_t i = lo; i <= hi && i < a.size(); ++i) {
            acc += a[i] * b[p - i];
        }
        out[p] = acc;
    }
    return out;
}

std::vector<double> lagrange_coefficients(std::size_t n, QValue q, std::span<const double> z,
                                          std::size_t p_max) {
    if (z.empty()) {
        throw std::invalid_argument("q-Lagrange polynomial needs at least one variable");
    }
    const std::size_t length = p_max + 1;
    const auto first = coefficient_sequence(n, z[0], q, length);
    std::vector<double> acc(first.entries().begin(), first.entries().end());
    for (std::size_t k = 1; k < z.size(); ++k) {
        const auto next = coefficient_sequence(n, z[k], q, length);
        acc = convolve(acc, next.entries(), length);
    }
    return acc;
}

double lagrange_polynomial(std::size_t n, QValue q, std::span<const double> z, std::size_t p) {
    return lagrange_coefficients(n, q, z, p)[p];
}

double generating_function_residual(std::size_t n, QValue q, std::span<const double> z, double t,
                                    std::size_t p_max) {
    if (z.empty()) {
        throw std::invalid_argument("generating function needs at least one variable");
    }
    for (const double zk : z) {
        if (!(std::abs(t) * zk < 1.0) || !(t * zk < 1.0)) {
            std::ostringstream msg;
            msg << "generating function radius violated: t = " << t << ", z_k = " << zk;
            throw std::invalid_argument(msg.str());
        }
    }
    double lhs = 1.0;
    for (const double zk : z) {
        lhs /= q_pochhammer(t * zk, q, n);
    }
    const auto h = lagrange_coefficients(n, q, z, p_max);
    double rhs = 0.0;
    double tp = 1.0;
    for (std::size_t p = 0; p <= p_max; ++p) {
        rhs += h[p] * tp;
        tp *= t;
    }
    return std::abs(lhs - rhs);
}

}  // namespace qkorovkin
