#include "qkorovkin/summability.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qkorovkin {

namespace {

constexpr double kRowTailTol = 1e-12;
constexpr double kSeriesTailTol = 1e-12;
constexpr std::size_t kMaxSeriesTerms = 100'000'000;

}  // namespace

int squares_indicator(std::size_t m) {
    auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(m)));
    while (root * root > m) {
        --root;
    }
    while ((root + 1) * (root + 1) <= m) {
        ++root;
    }
    return root * root == m ? 1 : 0;
}

double prefix_density(const Membership& membership, std::size_t N) {
    if (N == 0) {
        throw std::invalid_argument("prefix density needs N >= 1");
    }
    std::size_t count = 0;
    for (std::size_t m = 1; m <= N; ++m) {
        count += membership(m) ? 1 : 0;
    }
    return static_cast<double>(count) / static_cast<double>(N);
}

// ---------------------------------------------------------------------------

SummabilityMatrix::SummabilityMatrix(std::string name, Entry entry, Support support)
    : name_(std::move(name)), entry_(std::move(entry)), support_(std::move(support)) {}

SummabilityMatrix SummabilityMatrix::identity() {
    return {"identity", [](std::size_t n, std::size_t k) { return n == k ? 1.0 : 0.0; },
            [](std::size_t n, double) { return n; }};
}

SummabilityMatrix SummabilityMatrix::cesaro() {
    return {"cesaro",
            [](std::size_t n, std::size_t k) { return k >= 1 && k <= n ? 1.0 / static_cast<double>(n) : 0.0; },
            [](std::size_t n, double) { return n; }};
}

SummabilityMatrix SummabilityMatrix::geometric() {
    auto theta = [](std::size_t n) { return 1.0 - 1.0 / static_cast<double>(n); };
    return {"geometric",
            [theta](std::size_t n, std::size_t k) {
                const double t = theta(n);
                if (k == 0) {
                    return 0.0;
                }
                return (1.0 - t) * std::pow(t, static_cast<double>(k - 1));
            },
            [theta](std::size_t n, double tol) -> std::size_t {
                const double t = theta(n);
                if (t == 0.0) {
                    return 1;
                }
                // Σ_{k>K} (1−θ)θ^{k−1} = θ^K
                const double K = std::ceil(std::log(tol) / std::log(t));
                if (!std::isfinite(K) || K > 1e9) {
                    throw std::domain_error("geometric row tail cannot be certified");
                }
                return static_cast<std::size_t>(std::max(K, 1.0));
            }};
}

double SummabilityMatrix::row_sum(std::size_t n, double tol) const {
    const std::size_t K = support(n, tol);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        sum += entry(n, k);
    }
    return sum;
}

double SummabilityScheme::weight_sum(std::size_t n) const {
    const std::size_t b = lower(n);
    const std::size_t c = upper(n);
    if (b >= c) {
        std::ostringstream msg;
        msg << "deferral sequences need b_n < c_n, got b_" << n << " = " << b << ", c_" << n
            << " = " << c;
        throw std::invalid_argument(msg.str());
    }
    double sum = 0.0;
    for (std::size_t m = b + 1; m <= c; ++m) {
        sum += weights(m);
    }
    return sum;
}

SummabilityScheme default_scheme() {
    return {SummabilityMatrix::cesaro(), [](std::size_t) { return 1.0; },
            [](std::size_t n) { return n / 2; }, [](std::size_t n) { return n; }};
}

SummabilityScheme identity_scheme() {
    return {SummabilityMatrix::identity(), [](std::size_t) { return 1.0; },
            [](std::size_t n) { return n - 1; }, [](std::size_t n) { return n; }};
}

SummabilityScheme prefix_scheme() {
    return {SummabilityMatrix::identity(), [](std::size_t) { return 1.0; },
            [](std::size_t) { return std::size_t{0}; }, [](std::size_t n) { return n; }};
}

// ---------------------------------------------------------------------------

double weighted_statistical_density(const IndexedSequence& seq, const IndexedSequence& weights,
                                    double l, double eps, std::size_t N) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    double total = 0.0;
    for (std::size_t k = 1; k <= N; ++k) {
        total += weights(k);
    }
    if (!(total > 0.0)) {
        throw std::domain_error("weight sum S_N is zero");
    }
    const auto k_max = static_cast<std::size_t>(std::floor(total));
    std::size_t count = 0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (weights(k) * std::abs(seq(k) - l) >= eps) {
            ++count;
        }
    }
    return static_cast<double>(count) / total;
}

double a_statistical_tail(const IndexedSequence& seq, const SummabilityMatrix& matrix, double l,
                          double eps, std::size_t n) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    const std::size_t K = matrix.support(n, kRowTailTol);
    double sum = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
        if (std::abs(seq(k) - l) >= eps) {
            sum += matrix.entry(n, k);
        }
    }
    return sum;
}

double deferred_weighted_A_density(const Membership& membership, const SummabilityScheme& scheme,
                                   std::size_t n) {
    const double S = scheme.weight_sum(n);
    if (!(S > 0.0)) {
        throw std::domain_error("deferred weight sum S_n is zero");
    }
    double total = 0.0;
    for (std::size_t m = scheme.lower(n) + 1; m <= scheme.upper(n); ++m) {
        const double s = scheme.weights(m);
        if (s == 0.0) {
            continue;
        }
        const std::size_t K = scheme.matrix.support(m, kRowTailTol);
        double row = 0.0;
        for (std::size_t k = 1; k <= K; ++k) {
            if (membership(k)) {
                row += scheme.matrix.entry(m, k);
            }
        }
        total += s * row;
    }
    return total / S;
}

double deferred_weighted_mean(const IndexedSequence& seq, const SummabilityScheme& scheme,
                              std::size_t n) {
    const double S = scheme.weight_sum(n);
    if (!(S > 0.0)) {
        throw std::domain_error("deferred weight sum S_n is zero");
    }
    double total = 0.0;
    for (std::size_t m = scheme.lower(n) + 1; m <= scheme.upper(n); ++m) {
        total += scheme.weights(m) * seq(m);
    }
    return total / S;
}

// ---------------------------------------------------------------------------

PowerSeriesMethod::PowerSeriesMethod(std::string name, LogCoeff log_coeff, double radius,
                                     LogSum log_sum, RelativeTail relative_tail)
    : name_(std::move(name)),
      log_coeff_(std::move(log_coeff)),
      radius_(radius),
      log_sum_(std::move(log_sum)),
      tail_(std::move(relative_tail)) {
    if (!(radius_ > 0.0)) {
        throw std::invalid_argument("power series radius must be positive");
    }
}

PowerSeriesMethod PowerSeriesMethod::abel() {
    return {"abel", [](std::size_t) { return 0.0; }, 1.0,
            [](double u) { return -std::log1p(-u); },
            [](std::size_t J, double u) { return std::pow(u, static_cast<double>(J)); }};
}

PowerSeriesMethod PowerSeriesMethod::borel() {
    return {"borel", [](std::size_t j) { return -std::lgamma(static_cast<double>(j)); },
            std::numeric_limits<double>::infinity(), [](double u) { return u; },
            [](std::size_t J, double u) {
                // Σ_{i≥J} u^i/i! ≤ e^u u^J / J!
                const double Jd = static_cast<double>(J);
                return std::exp(Jd * std::log(u) - std::lgamma(Jd + 1.0));
            }};
}

double PowerSeriesMethod::coefficient(std::size_t j) const { return std::exp(log_coeff_(j)); }

double PowerSeriesMethod::sum(double u) const { return std::exp(log_sum_(u)); }

double PowerSeriesMethod::log_weight(std::size_t j, double u) const {
    return log_coeff_(j) + static_cast<double>(j - 1) * std::log(u) - log_sum_(u);
}

std::vector<double> PowerSeriesMethod::ladder(int k_lo, int k_hi) const {
    std::vector<double> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        out.push_back(bounded_radius() ? radius_ * (1.0 - std::ldexp(1.0, -k)) : std::ldexp(1.0, k));
    }
    return out;
}

double power_series_transform(const BoundedSequence& seq, const PowerSeriesMethod& method, double u) {
    if (!(u > 0.0 && u < method.radius())) {
        std::ostringstream msg;
        msg << "power series transform needs 0 < u < R, got u = " << u;
        throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(seq.bound)) {
        throw std::domain_error("power series transform needs a bounded sequence");
    }
    double total = 0.0;
    std::size_t J = 0;
    while (seq.bound * method.relative_tail(J, u) > kSeriesTailTol) {
        ++J;
        if (J > kMaxSeriesTerms) {
            throw std::domain_error("power series tail did not fall below tolerance");
        }
        total += seq.at(J) * std::exp(method.log_weight(J, u));
    }
    return total;
}

LimitTrend power_series_limit_estimate(const BoundedSequence& seq, const PowerSeriesMethod& method) {
    return power_series_limit_estimate(seq, method, method.ladder());
}

LimitTrend power_series_limit_estimate(const BoundedSequence& seq, const PowerSeriesMethod& method,
                                       const std::vector<double>& ladder) {
    LimitTrend out;
    for (const double u : ladder) {
        out.trend.emplace_back(u, power_series_transform(seq, method, u));
    }
    if (!out.trend.empty()) {
        out.estimate = out.trend.back().second;
    }
    return out;
}

double regularity_ratio(const PowerSeriesMethod& method, std::size_t j, double u) {
    if (j == 0) {
        throw std::invalid_argument("power series indices start at 1");
    }
    return std::exp(method.log_weight(j, u));
}

void RateConfig::validate(std::size_t N) const {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= N; ++n) {
        const double a = alpha(n);
        if (!(a > 0.0) || a > prev) {
            std::ostringstream msg;
            msg << "rate scale alpha must be positive and nonincreasing; fails at n = " << n;
            throw std::invalid_argument(msg.str());
        }
        prev = a;
    }
}

double little_o_density(const IndexedSequence& seq, const RateConfig& rate,
                        const SummabilityScheme& scheme, double eps, std::size_t n) {
    return deferred_weighted_A_density(
        [&](std::size_t k) { return seq(k) / rate.alpha(k) >= eps; }, scheme, n);
}

double rate_ratio(const BoundedSequence& seq, const PowerSeriesMethod& method,
                  const RateConfig& rate, double u) {
    return power_series_transform(seq, method, u) / rate.omega(u);
}

}  // namespace qkorovkin
