#pragma once

/**
 * @file lagrange.hpp
 * @brief Multivariate q-Lagrange polynomials through their coefficient sequences.
 *
 * For one variable z the generating series 1/(t z; q)_n expands as
 *
 *     Σ_l (q^n; q)_l z^l / (q; q)_l · t^l,
 *
 * and the multivariate polynomial h_{p,q}^{(n,...,n)}(z_1, ..., z_r) is the
 * degree-p coefficient of the product of r such series, i.e. an r-fold
 * convolution of the per-variable coefficient sequences.
 */

#include "qkorovkin/qcore.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qkorovkin {

/// Coefficients (q^n; q)_l z^l / (q; q)_l for l = 0 .. size()-1.
class CoefficientSequence {
public:
    CoefficientSequence(std::size_t n, double z, QValue q, std::vector<double> entries);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] double z() const noexcept { return z_; }
    [[nodiscard]] QValue q() const noexcept { return q_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] double operator[](std::size_t l) const { return entries_[l]; }
    [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }

private:
    std::size_t n_;
    double z_;
    QValue q_;
    std::vector<double> entries_;
};

/**
 * Builds `length` coefficients by the multiplicative recurrence
 * c_l = c_{l-1} · z (1 − q^{n+l−1}) / (1 − q^l), c_0 = 1.
 * Throws std::invalid_argument unless 0 < z < 1, n ≥ 1 and length ≥ 1.
 */
[[nodiscard]] CoefficientSequence coefficient_sequence(std::size_t n, double z, QValue q,
                                                       std::size_t length);

/// Cauchy product of two sequences, truncated to `length` entries.
[[nodiscard]] std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                                           std::size_t length);

/// h_{0..p_max} for the variables z, via pairwise convolution.
[[nodiscard]] std::vector<double> lagrange_coefficients(std::size_t n, QValue q,
                                                        std::span<const double> z,
                                                        std::size_t p_max);

/// h_{p,q}^{(n,...,n)}(z_1, ..., z_r). Throws std::invalid_argument on an empty z.
[[nodiscard]] double lagrange_polynomial(std::size_t n, QValue q, std::span<const double> z,
                                         std::size_t p);

/**
 * | Π_k 1/(t z_k; q)_n − Σ_{p ≤ p_max} h_{p,q} t^p |.
 * Throws std::invalid_argument when |t| ≥ min_k 1/z_k or some t z_k ≥ 1.
 */
[[nodiscard]] double generating_function_residual(std::size_t n, QValue q,
                                                  std::span<const double> z, double t,
                                                  std::size_t p_max);

}  // namespace qkorovkin
