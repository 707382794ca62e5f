#pragma once

/**
 * @file summability.hpp
 * @brief Densities, deferred weighted A-statistical tails and power series
 *        (Abel-type) transforms of real sequences.
 *
 * Sequences are indexed from 1. Infinite matrix rows and power series are
 * only ever summed up to a certified tail bound; callers supply that bound
 * through the matrix support function or the method's relative tail.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qkorovkin {

using IndexedSequence = std::function<double(std::size_t)>;
using Membership = std::function<bool(std::size_t)>;

/// A sequence together with a bound on |x_k|; an infinite bound marks it unbounded.
struct BoundedSequence {
    IndexedSequence at;
    double bound = std::numeric_limits<double>::infinity();
};

/// 1 iff m is a perfect square.
[[nodiscard]] int squares_indicator(std::size_t m);

/// |{m ≤ N : membership(m)}| / N. Throws std::invalid_argument for N = 0.
[[nodiscard]] double prefix_density(const Membership& membership, std::size_t N);

/**
 * Nonnegative summability matrix A = (a_{n,k}) given row by row.
 * `support(n, tol)` returns K with Σ_{k>K} a_{n,k} ≤ tol, or throws
 * std::domain_error if the row tail cannot be certified.
 */
class SummabilityMatrix {
public:
    using Entry = std::function<double(std::size_t n, std::size_t k)>;
    using Support = std::function<std::size_t(std::size_t n, double tol)>;

    SummabilityMatrix(std::string name, Entry entry, Support support);

    [[nodiscard]] static SummabilityMatrix identity();
    /// Cesàro C1: a_{n,k} = 1/n for k ≤ n.
    [[nodiscard]] static SummabilityMatrix cesaro();
    /// Geometric rows a_{n,k} = (1 − θ_n) θ_n^{k−1}, θ_n = 1 − 1/n (infinite support).
    [[nodiscard]] static SummabilityMatrix geometric();

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double entry(std::size_t n, std::size_t k) const { return entry_(n, k); }
    [[nodiscard]] std::size_t support(std::size_t n, double tol) const { return support_(n, tol); }
    [[nodiscard]] double row_sum(std::size_t n, double tol = 1e-12) const;

private:
    std::string name_;
    Entry entry_;
    Support support_;
};

/// A, weights s_m, deferral sequences b_n < c_n.
struct SummabilityScheme {
    SummabilityMatrix matrix;
    IndexedSequence weights;
    std::function<std::size_t(std::size_t)> lower;  // b_n
    std::function<std::size_t(std::size_t)> upper;  // c_n

    /// S_n = Σ_{m=b_n+1}^{c_n} s_m. Throws std::invalid_argument if b_n ≥ c_n.
    [[nodiscard]] double weight_sum(std::size_t n) const;
};

/// C1 rows, s ≡ 1, b_n = ⌊n/2⌋, c_n = n.
[[nodiscard]] SummabilityScheme default_scheme();
/// Identity rows, s ≡ 1, b_n = n − 1, c_n = n: densities collapse to the ε-criterion at n.
[[nodiscard]] SummabilityScheme identity_scheme();
/// Identity rows, s ≡ 1, b_n = 0, c_n = n: densities collapse to prefix densities.
[[nodiscard]] SummabilityScheme prefix_scheme();

/**
 * |{k ≤ S_N : s_k |x_k − l| ≥ ε}| / S_N with S_N = Σ_{k ≤ N} s_k, taken literally
 * (with s ≡ 1 the index bound is k ≤ N). Throws std::domain_error if S_N = 0.
 */
[[nodiscard]] double weighted_statistical_density(const IndexedSequence& seq,
                                                  const IndexedSequence& weights, double l,
                                                  double eps, std::size_t N);

/// Σ_{k : |x_k − l| ≥ ε} a_{n,k}, summed up to a certified row tail below 1e−12.
[[nodiscard]] double a_statistical_tail(const IndexedSequence& seq, const SummabilityMatrix& matrix,
                                        double l, double eps, std::size_t n);

/// (1/S_n) Σ_{m=b_n+1}^{c_n} Σ_{k ∈ K} s_m a_{m,k}.
[[nodiscard]] double deferred_weighted_A_density(const Membership& membership,
                                                 const SummabilityScheme& scheme, std::size_t n);

/// ρ_n = (1/S_n) Σ_{m=b_n+1}^{c_n} s_m x_m. Throws std::domain_error if S_n = 0.
[[nodiscard]] double deferred_weighted_mean(const IndexedSequence& seq,
                                            const SummabilityScheme& scheme, std::size_t n);

/**
 * Power series method p(u) = Σ_{j≥1} p_j u^{j−1} with radius R. Coefficients
 * and the sum are handled in log space; `relative_tail(J, u)` must bound
 * Σ_{j>J} p_j u^{j−1} / p(u).
 */
class PowerSeriesMethod {
public:
    using LogCoeff = std::function<double(std::size_t j)>;
    using LogSum = std::function<double(double u)>;
    using RelativeTail = std::function<double(std::size_t J, double u)>;

    PowerSeriesMethod(std::string name, LogCoeff log_coeff, double radius, LogSum log_sum,
                      RelativeTail relative_tail);

    /// p_j ≡ 1, R = 1, p(u) = 1/(1 − u).
    [[nodiscard]] static PowerSeriesMethod abel();
    /// p_j = 1/(j−1)!, R = ∞, p(u) = e^u.
    [[nodiscard]] static PowerSeriesMethod borel();

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] bool bounded_radius() const noexcept { return std::isfinite(radius_); }
    [[nodiscard]] double coefficient(std::size_t j) const;
    [[nodiscard]] double sum(double u) const;
    /// log(p_j u^{j−1} / p(u)).
    [[nodiscard]] double log_weight(std::size_t j, double u) const;
    [[nodiscard]] double relative_tail(std::size_t J, double u) const { return tail_(J, u); }

    /// u_k = R(1 − 2^{−k}) for bounded R, 2^k otherwise.
    [[nodiscard]] std::vector<double> ladder(int k_lo = 4, int k_hi = 14) const;

private:
    std::string name_;
    LogCoeff log_coeff_;
    double radius_;
    LogSum log_sum_;
    RelativeTail tail_;
};

/**
 * (1/p(u)) Σ_j x_j p_j u^{j−1}, with the tail certified below 1e−12 via the
 * sequence bound. Throws std::invalid_argument for u outside (0, R) and
 * std::domain_error for an unbounded sequence.
 */
[[nodiscard]] double power_series_transform(const BoundedSequence& seq,
                                            const PowerSeriesMethod& method, double u);

struct LimitTrend {
    double estimate = 0.0;                          ///< value at the last ladder point
    std::vector<std::pair<double, double>> trend;  ///< (u, transform)
};

/// Transform values along method.ladder(); no extrapolation is attempted.
[[nodiscard]] LimitTrend power_series_limit_estimate(const BoundedSequence& seq,
                                                     const PowerSeriesMethod& method);
[[nodiscard]] LimitTrend power_series_limit_estimate(const BoundedSequence& seq,
                                                     const PowerSeriesMethod& method,
                                                     const std::vector<double>& ladder);

/// p_j u^{j−1} / p(u); tends to 0 as u → R⁻ for a regular method.
[[nodiscard]] double regularity_ratio(const PowerSeriesMethod& method, std::size_t j, double u);

/// Scale α_n (positive, nonincreasing) and comparison function Ω(u) for rate statements.
struct RateConfig {
    IndexedSequence alpha;
    std::function<double(double)> omega;

    /// Throws std::invalid_argument if α fails positivity or monotonicity on 1..N.
    void validate(std::size_t N) const;
};

/// Deferred weighted A-density of {k : x_k / α_k ≥ ε}: the o(α_n) criterion at n.
[[nodiscard]] double little_o_density(const IndexedSequence& seq, const RateConfig& rate,
                                      const SummabilityScheme& scheme, double eps, std::size_t n);

/// power_series_transform(seq)(u) / Ω(u): bounded along the ladder for an O(Ω(u)) rate.
[[nodiscard]] double rate_ratio(const BoundedSequence& seq, const PowerSeriesMethod& method,
                                const RateConfig& rate, double u);

}  // namespace qkorovkin
