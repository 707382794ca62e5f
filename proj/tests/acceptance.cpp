// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail N]...
// Exits 0 iff the set of failing criteria equals the expected set, so an
// unexpected pass is reported just like an unexpected failure.

#include "oracles.hpp"

#include "qkorovkin/harness/targets.hpp"
#include "qkorovkin/moments.hpp"
#include "qkorovkin/operators.hpp"
#include "qkorovkin/qcore.hpp"
#include "qkorovkin/summability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace qkorovkin;

namespace {

using Clock = std::chrono::steady_clock;

// floating-point allowance on top of certified truncation slack; the corrected
// moment bounds hold with equality at x = 0
constexpr double kRounding = 1e-12;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

struct Draw {
    OperatorSpec spec;
    double x;
};

// r ≤ 3, n ∈ [2, 64], q ∈ [0.3, 0.95], β ∈ (0, 1), x ∈ [0, 1]; every fifth x is an endpoint
std::vector<Draw> acceptance_draws() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> r(1, 3);
    std::uniform_int_distribution<int> n(2, 64);
    std::uniform_real_distribution<double> q(0.3, 0.95);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Draw> draws;
    for (int i = 0; i < 200; ++i) {
        std::vector<double> betas(static_cast<std::size_t>(r(rng)));
        for (auto& b : betas) {
            b = std::clamp(unit(rng), 1e-9, 1.0 - 1e-9);
        }
        const auto nn = static_cast<std::size_t>(n(rng));
        const double qq = q(rng);
        double x = unit(rng);
        if (i % 10 == 0) {
            x = 0.0;
        } else if (i % 10 == 5) {
            x = 1.0;
        }
        draws.push_back({OperatorSpec(nn, QValue(qq), std::move(betas)), x});
    }
    return draws;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome normalization(const std::vector<Draw>& draws) {
    const auto t0 = Clock::now();
    const Truncation trunc(1e-10, 4096);
    double worst = 0.0;
    int bad = 0;
    for (const Draw& d : draws) {
        const double err = std::abs(evaluate_K(d.spec, [](double) { return 1.0; }, d.x, trunc).value - 1.0);
        worst = std::max(worst, err);
        bad += err > trunc.mass_tol() + 1e-12 ? 1 : 0;
    }
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu draws, worst |K(1;x)-1| %.3g, %d over tolerance, %.2f s", draws.size(),
                  worst, bad, t);
    return {bad == 0 && t < 10.0, buf};
}

Outcome moment_inequalities(const std::vector<Draw>& draws) {
    int v1 = 0;
    int v2 = 0;
    int vg = 0;
    int c1 = 0;
    int c2 = 0;
    for (const Draw& d : draws) {
        const MomentReport m = moment_report(d.spec, d.x);
        const double x = d.x;
        const double e1 = std::abs(m.moment1 - x);
        const double e2 = std::abs(m.moment2 - x * x);
        const double s1 = m.slack1 + kRounding;
        const double s2 = m.slack2 + kRounding;
        v1 += e1 > m.bound1 + s1 ? 1 : 0;
        v2 += e2 > m.bound2 + s2 ? 1 : 0;
        const double sc = m.slack2 + 2.0 * x * m.slack1 + x * x * m.slack0 + kRounding;
        vg += (m.central2 < -sc || m.central2 > m.gamma + sc) ? 1 : 0;
        const MomentBounds c = corrected_moment_bounds(d.spec.n(), d.spec.q(), d.spec.beta_r(), x);
        c1 += e1 > c.bound1 + s1 ? 1 : 0;
        c2 += e2 > c.bound2 + s2 ? 1 : 0;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "violations: first moment %d, second moment %d, central/gamma %d; "
                  "with [n-1]_q in the x-free terms: %d and %d",
                  v1, v2, vg, c1, c2);
    return {v1 + v2 + vg == 0, buf};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<oracle::Fn> fs{[](double s) { return s * s; }, [](double s) { return std::exp(-s) + s; },
                                     [](double s) { return std::abs(s - 0.3); }};
    int instances = 0;
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 72; ++i) {
        const std::size_t r = 1 + static_cast<std::size_t>(i % 3);
        const std::size_t n = 2 + static_cast<std::size_t>(u(rng) * 12.0);
        const double q = 0.3 + 0.65 * u(rng);
        std::vector<double> betas(r);
        for (auto& b : betas) {
            b = 0.02 + 0.96 * u(rng);
        }
        const double x = u(rng);
        const std::size_t p_max = 1 + static_cast<std::size_t>(i % 8);
        const auto& f = fs[static_cast<std::size_t>(i / 3) % fs.size()];
        const OperatorSpec spec(n, QValue(q), betas);
        const Truncation trunc(1e-300, p_max);
        const double k = make_K(spec, f, SeriesForm::joint, 1e-16).evaluate(x, trunc).value;
        const double s = make_S(spec, f).evaluate(x, trunc).value;
        const double ko = oracle::operator_by_enumeration(oracle::Node::integral, n, q, betas, f, x, p_max);
        const double so = oracle::operator_by_enumeration(oracle::Node::sample, n, q, betas, f, x, p_max);
        for (const auto& [a, b] : {std::pair{k, ko}, std::pair{s, so}}) {
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
            bad += close_rel(a, b, 1e-12) ? 0 : 1;
        }
        ++instances;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d instances (K and S), worst relative gap %.3g, %d mismatches", instances,
                  worst, bad);
    return {bad == 0 && instances >= 50, buf};
}

Outcome q_integral() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng);
        const double b = a + (1.0 - a) * u(rng) + 1e-9;
        const QValue q(0.05 + 0.9 * u(rng));
        for (unsigned m = 0; m <= 4; ++m) {
            const double numeric = q_riemann_integral([m](double s) { return std::pow(s, m); }, {a, b}, q);
            worst = std::max(worst, std::abs(numeric - q_riemann_monomial(m, {a, b}, q)));
        }
    }
    const double one = q_riemann_integral([](double) { return 1.0; }, {0.0, 1.0}, QValue(0.5));
    char buf[160];
    std::snprintf(buf, sizeof buf, "100 draws, m <= 4, worst gap %.3g; integral of 1 over [0,1] = %.17g", worst,
                  one);
    return {worst <= 1e-12 && one == 1.0, buf};
}

Outcome classical_limit() {
    const std::vector<double> b{8.0 / 9.0, 8.0 / 9.0};
    const auto sq = [](double s) { return s * s; };
    const Truncation trunc(1e-13, 65536);
    const double e = evaluate_classical(ClassicalKind::E, 8, b, sq, 0.5, trunc).value;
    double prev = HUGE_VAL;
    bool decreasing = true;
    std::string trail;
    for (const double q : {0.9, 0.99, 0.999}) {
        const double gap = std::abs(evaluate_K(OperatorSpec(8, QValue(q), b), sq, 0.5, trunc).value - e);
        decreasing = decreasing && gap < prev;
        prev = gap;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%.6g", trail.empty() ? "" : ", ", gap);
        trail += buf;
    }
    return {decreasing && prev <= 1e-2, "|K - E| at q = 0.9, 0.99, 0.999: " + trail};
}

Outcome convergence_ladder() {
    const auto t0 = Clock::now();
    const SequenceSpec seq = SequenceSpec::standard(2);
    const auto sq = [](double s) { return s * s; };
    const GridFunction g(sq, 257);
    const std::vector<double> grid = harness::uniform_grid(257);
    const Truncation trunc(1e-10, 65536);
    double prev = HUGE_VAL;
    bool ok = true;
    std::string trail;
    for (const std::size_t n : {8u, 16u, 32u, 64u}) {
        const OperatorSpec spec = seq.at(n);
        OperatorEvaluator op = make_K(spec, sq);
        double err = 0.0;
        double slack = 0.0;
        const auto results = op.evaluate_grid(grid, trunc);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            err = std::max(err, std::abs(results[i].value - sq(grid[i])));
            slack = std::max(slack, results[i].tail_bound);
        }
        // node q-averages are cut at a 1e−12 tail
        slack += kRounding;
        const double bound = rate_bound(g, n, spec.q(), spec.beta_r());
        ok = ok && err < prev && err <= bound + slack;
        prev = err;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%sn=%zu %.4g<=%.4g", trail.empty() ? "" : ", ", n, err, bound);
        trail += buf;
    }
    const double t = seconds_since(t0);
    char buf[48];
    std::snprintf(buf, sizeof buf, ", %.2f s", t);
    return {ok && t < 60.0, trail + buf};
}

Outcome counterexample() {
    const SequenceSpec seq = SequenceSpec::standard(2);
    const harness::Target one = harness::builtin_target("constant");
    const std::vector<double> grid = harness::uniform_grid(257);
    const Truncation trunc(1e-10, 65536);
    const std::size_t computed = 64;
    const std::size_t horizon = 1000;

    // e_m = sup |(1 + x_m) K_{m+1}(1) − 1|; beyond the computed range K(1) = 1 leaves e_m = x_m
    std::vector<double> e(computed + 1, 0.0);
    double max_slack = 0.0;
    for (std::size_t m = 1; m <= computed; ++m) {
        OperatorEvaluator op = make_K_monomial(seq.at(m + 1), 0);
        const harness::SupError err = harness::sup_error(op, one, grid, trunc, auxiliary_factor(m));
        e[m] = err.error;
        max_slack = std::max(max_slack, err.slack);
    }
    max_slack += kRounding;
    auto e_at = [&](std::size_t m) { return m <= computed ? e[m] : static_cast<double>(squares_indicator(m)); };

    bool a = true;
    for (const std::size_t m : {4u, 9u, 16u, 25u}) {
        a = a && std::abs(e_at(m) - 1.0) <= max_slack;
    }

    const BoundedSequence s{e_at, 2.0};
    const auto abel = PowerSeriesMethod::abel();
    double prev = HUGE_VAL;
    bool b = true;
    std::string trail;
    for (const double u : {0.9, 0.99, 0.999}) {
        const double t = power_series_transform(s, abel, u);
        b = b && t < prev;
        if (u == 0.99) {
            b = b && std::abs(t - 0.084) <= 0.2 * 0.084;
        }
        prev = t;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%.6g", trail.empty() ? "" : ", ", t);
        trail += buf;
    }

    bool c = true;
    double running = 0.0;
    for (std::size_t N = 1; N <= horizon; ++N) {
        running = std::max(running, e_at(N));
        c = c && std::abs(running - 1.0) <= max_slack;
    }
    return {a && b && c, std::string("(a) e_m = 1 at 4, 9, 16, 25 ") + (a ? "yes" : "no") +
                             "; (b) Abel at u = 0.9, 0.99, 0.999: " + trail + "; (c) prefix max 1 for N <= 1000 " +
                             (c ? "yes" : "no")};
}

Outcome collapse_identities() {
    const IndexedSequence x = [](std::size_t k) { return std::cos(static_cast<double>(k)) / std::sqrt(k); };
    bool identity = true;
    for (const double eps : {0.05, 0.2}) {
        for (std::size_t n = 1; n <= 500; ++n) {
            const double ordinary = std::abs(x(n)) >= eps ? 1.0 : 0.0;
            identity = identity && a_statistical_tail(x, SummabilityMatrix::identity(), 0.0, eps, n) == ordinary;
            identity = identity && deferred_weighted_A_density([&](std::size_t k) { return std::abs(x(k)) >= eps; },
                                                               identity_scheme(), n) == ordinary;
        }
    }
    double worst = 0.0;
    for (std::size_t n = 1; n <= 500; ++n) {
        double direct = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            direct += x(k);
        }
        direct /= static_cast<double>(n);
        worst = std::max(worst, std::abs(deferred_weighted_mean(x, prefix_scheme(), n) - direct));
    }
    const double density = prefix_density([](std::size_t m) { return squares_indicator(m) == 1; }, 10'000);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "identity rows match the ordinary criterion: %s; deferred vs Cesaro mean gap %.3g; "
                  "squares density at 10^4 = %.17g",
                  identity ? "yes" : "no", worst, density);
    return {identity && worst <= 1e-15 && density == 0.01, buf};
}

Outcome regularity() {
    const auto abel = PowerSeriesMethod::abel();
    double worst = 0.0;
    bool decreasing = true;
    for (std::size_t j = 1; j <= 3; ++j) {
        double prev = HUGE_VAL;
        for (const double u : {0.9, 0.99, 0.999}) {
            const double r = regularity_ratio(abel, j, u);
            worst = std::max(worst, std::abs(r - std::pow(u, static_cast<double>(j - 1)) * (1.0 - u)));
            decreasing = decreasing && r < prev;
            prev = r;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "j = 1..3, decreasing %s, worst gap to u^(j-1)(1-u) %.3g",
                  decreasing ? "yes" : "no", worst);
    return {decreasing && worst <= 1e-15, buf};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            expected.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
            return 2;
        }
    }

    const std::vector<Draw> draws = acceptance_draws();
    const std::vector<std::pair<const char*, Outcome (*)()>> plain{
        {"oracle equivalence", oracle_equivalence},   {"q-integral", q_integral},
        {"classical limit", classical_limit},         {"convergence ladder", convergence_ladder},
        {"counterexample", counterexample},           {"summability collapse", collapse_identities},
        {"regularity", regularity},
    };

    std::vector<std::pair<std::string, Outcome>> results;
    results.emplace_back("normalization", normalization(draws));
    results.emplace_back("moment inequalities", moment_inequalities(draws));
    for (const auto& [name, run] : plain) {
        results.emplace_back(name, run());
    }

    std::set<int> failed;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto& [name, out] = results[i];
        if (!out.pass) {
            failed.insert(id);
        }
        std::printf("criterion %d %-22s %s  %s%s\n", id, name.c_str(), out.pass ? "PASS" : "FAIL",
                    out.detail.c_str(), expected.count(id) ? "  [expected to fail]" : "");
    }
    if (failed != expected) {
        std::printf("failing criteria differ from the expected set\n");
        return 1;
    }
    return 0;
}
