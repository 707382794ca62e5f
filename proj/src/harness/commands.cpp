#include "qkorovkin/harness/commands.hpp"

#include "qkorovkin/moments.hpp"
#include "qkorovkin/summability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qkorovkin::harness {

namespace {

constexpr double kRounding = 1e-12;

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// Collects report lines and remembers whether any check failed.
class Report {
public:
    void line(const std::string& text) { out_ << text << '\n'; }

    bool check(bool ok, const std::string& what) {
        out_ << verdict(ok) << "  " << what << '\n';
        failed_ = failed_ || !ok;
        return ok;
    }

    [[nodiscard]] CommandResult finish(const std::string& csv) const {
        std::ostringstream tail;
        tail << out_.str() << (failed_ ? "result: FAIL\n" : "result: PASS\n");
        return {failed_ ? kExitCheckFailed : kExitPass, tail.str(), csv};
    }

private:
    std::ostringstream out_;
    bool failed_ = false;
};

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string row;
    for (const auto& c : cells) {
        if (!row.empty()) {
            row += ',';
        }
        row += c;
    }
    return row + '\n';
}

std::string fr(double v) { return format_real(v); }

SummabilityScheme scheme_by_name(const std::string& name) {
    if (name == "identity") {
        return identity_scheme();
    }
    if (name == "prefix") {
        return prefix_scheme();
    }
    return default_scheme();
}

PowerSeriesMethod method_by_name(const std::string& name) {
    return name == "borel" ? PowerSeriesMethod::borel() : PowerSeriesMethod::abel();
}

}  // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CommandResult cmd_verify_moments(const ExperimentConfig& cfg) {
    const SequenceSpec seq = cfg.sequence();
    const Truncation trunc = cfg.truncation();
    Report report;
    std::string csv = "n,x,m0,m1,m2,bound1,bound2,central2,gamma\n";
    report.line("moment bounds: " + cfg.bounds);

    for (const std::size_t n : cfg.n_ladder) {
        const OperatorSpec spec = seq.at(n);
        for (const double x : cfg.x_points) {
            MomentReport m = moment_report(spec, x, trunc, cfg.form);
            if (cfg.bounds == "corrected") {
                const MomentBounds c = corrected_moment_bounds(n, spec.q(), spec.beta_r(), x);
                m.bound1 = c.bound1;
                m.bound2 = c.bound2;
            }
            csv += csv_row({std::to_string(n), fr(x), fr(m.moment0), fr(m.moment1), fr(m.moment2),
                            fr(m.bound1), fr(m.bound2), fr(m.central2), fr(m.gamma)});

            const std::string at = "n=" + std::to_string(n) + " x=" + fr(x);
            const double s0 = m.slack0 + kRounding;
            const double s1 = m.slack1 + kRounding;
            const double s2 = m.slack2 + kRounding;
            const double sc = m.slack2 + 2.0 * x * m.slack1 + x * x * m.slack0 + kRounding;
            const double d0 = std::abs(m.moment0 - 1.0);
            const double d1 = std::abs(m.moment1 - x);
            const double d2 = std::abs(m.moment2 - x * x);
            report.check(d0 <= s0, at + " |K(1)-1| = " + fr(d0) + " <= slack " + fr(s0));
            report.check(d1 <= m.bound1 + s1, at + " |K(s)-x| = " + fr(d1) + " <= bound1 " +
                                                  fr(m.bound1) + " + slack " + fr(s1));
            report.check(d2 <= m.bound2 + s2, at + " |K(s^2)-x^2| = " + fr(d2) + " <= bound2 " +
                                                  fr(m.bound2) + " + slack " + fr(s2));
            report.check(m.central2 >= -sc && m.central2 <= m.gamma + sc,
                         at + " 0 <= central2 = " + fr(m.central2) + " <= gamma " + fr(m.gamma) +
                             " (slack " + fr(sc) + ")");
        }
    }
    return report.finish(csv);
}

CommandResult cmd_converge(const ExperimentConfig& cfg) {
    const SequenceSpec seq = cfg.sequence();
    const Truncation trunc = cfg.truncation();
    const Target target = cfg.target_function();
    const std::vector<double> grid = uniform_grid(cfg.grid_points);
    const GridFunction sampled(target.f, cfg.grid_points);
    Report report;
    std::string csv = "n,q,beta,sup_error,rate_bound,ratio,slack,p_used\n";

    report.line("target " + target.name + ", grid " + std::to_string(cfg.grid_points) + " points");
    double previous = HUGE_VAL;
    bool decreasing = true;
    for (const std::size_t n : cfg.n_ladder) {
        const OperatorSpec spec = seq.at(n);
        OperatorEvaluator op = make_target_operator(spec, target, cfg.form);
        const SupError err = sup_error(op, target, grid, trunc);
        double bound = 0.0;
        try {
            bound = rate_bound(sampled, n, spec.q(), spec.beta_r());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("grid.points: ") + e.what());
        }
        const double slack = err.slack + kRounding;
        csv += csv_row({std::to_string(n), fr(spec.q().value()), fr(spec.beta_r()), fr(err.error),
                        fr(bound), fr(err.error / bound), fr(slack), std::to_string(err.p_used)});
        report.check(err.error <= bound + slack, "n=" + std::to_string(n) + " sup error " +
                                                     fr(err.error) + " <= rate bound " + fr(bound) +
                                                     " + slack " + fr(slack));
        if (!err.mass_reached) {
            report.line("note  n=" + std::to_string(n) + " hit p_max before the mass target");
        }
        decreasing = decreasing && err.error < previous;
        previous = err.error;
    }
    report.line(std::string("trend  sup error ") +
                (decreasing ? "strictly decreasing" : "not strictly decreasing") + " along the n-ladder");
    return report.finish(csv);
}

CommandResult cmd_counterexample(const ExperimentConfig& cfg) {
    const SequenceSpec seq = cfg.sequence();
    const Truncation trunc = cfg.truncation();
    const Target target = cfg.target_function();
    if (!target.is_constant()) {
        throw ConfigError("target.name: the counterexample runs on the constant target f0 = 1");
    }
    const std::vector<double> grid = uniform_grid(cfg.grid_points);
    const std::size_t computed = std::min(cfg.operator_terms, cfg.horizon);
    Report report;
    std::string csv = "m,x_m,e_m,slack,source\n";

    // e_m = ||(1 + x_m) K_{m+1}(f0) − f0||; past the computed range K(1) = 1 gives e_m = x_m
    std::vector<double> e(computed + 1, 0.0);
    std::vector<double> slack(computed + 1, 0.0);
    for (std::size_t m = 1; m <= computed; ++m) {
        OperatorEvaluator op = make_target_operator(seq.at(m + 1), target, cfg.form);
        const SupError err = sup_error(op, target, grid, trunc, auxiliary_factor(m));
        e[m] = err.error;
        slack[m] = err.slack;
    }
    auto e_at = [&](std::size_t m) {
        return m <= computed ? e[m] : static_cast<double>(squares_indicator(m));
    };
    for (std::size_t m = 1; m <= cfg.horizon; ++m) {
        csv += csv_row({std::to_string(m), std::to_string(squares_indicator(m)), fr(e_at(m)),
                        fr(m <= computed ? slack[m] : 0.0), m <= computed ? "operator" : "identity"});
    }

    for (const std::size_t m : cfg.check_points) {
        const double s = (m <= computed ? slack[m] : 0.0) + kRounding;
        const int xm = squares_indicator(m);
        report.check(std::abs(e_at(m) - xm) <= s, "e_" + std::to_string(m) + " = " + fr(e_at(m)) +
                                                      " equals x_m = " + std::to_string(xm) +
                                                      " within slack " + fr(s));
    }

    const double max_slack = *std::max_element(slack.begin(), slack.end()) + kRounding;
    double running = 0.0;
    std::size_t first_bad = 0;
    for (std::size_t N = 1; N <= cfg.horizon; ++N) {
        running = std::max(running, e_at(N));
        if (first_bad == 0 && std::abs(running - 1.0) > max_slack) {
            first_bad = N;
        }
    }
    report.check(first_bad == 0, "prefix max of e_m equals 1 for every N <= " +
                                     std::to_string(cfg.horizon) + " (slack " + fr(max_slack) + ")" +
                                     (first_bad ? ", fails at N = " + std::to_string(first_bad) : ""));

    double bound = 1.0;
    for (std::size_t m = 1; m <= computed; ++m) {
        bound = std::max(bound, e[m]);
    }
    const PowerSeriesMethod method = method_by_name(cfg.method);
    const LimitTrend trend = power_series_limit_estimate({e_at, bound}, method, cfg.u_ladder);
    bool decreasing = true;
    for (std::size_t i = 0; i < trend.trend.size(); ++i) {
        report.line(method.name() + " transform at u=" + fr(trend.trend[i].first) + ": " +
                    fr(trend.trend[i].second));
        if (i > 0) {
            decreasing = decreasing && trend.trend[i].second < trend.trend[i - 1].second;
        }
    }
    report.check(decreasing, method.name() + " transform strictly decreasing along the u-ladder");
    return report.finish(csv);
}

CommandResult cmd_summability(const ExperimentConfig& cfg) {
    const SequenceSpec seq = cfg.sequence();
    const Truncation trunc = cfg.truncation();
    const std::vector<double> grid = uniform_grid(cfg.grid_points);
    const SummabilityScheme scheme = scheme_by_name(cfg.scheme);
    const SummabilityScheme classical = identity_scheme();
    const std::size_t N_max = cfg.prefixes.back();
    Report report;
    std::string csv = "function,eps,N,density,identity_density\n";

    std::vector<Target> targets{builtin_target("identity"), builtin_target("square")};
    const Target test = cfg.target_function();
    if (test.name != "identity" && test.name != "square") {
        targets.push_back(test);
    }

    report.line("scheme " + cfg.scheme + " (" + scheme.matrix.name() + " rows), errors of K_{m+1} for m <= " +
                std::to_string(N_max));
    for (const Target& target : targets) {
        // error sequence indexed from 1; slot 0 unused
        std::vector<double> e(N_max + 1, 0.0);
        double max_slack = 0.0;
        for (std::size_t m = 1; m <= N_max; ++m) {
            OperatorEvaluator op = make_target_operator(seq.at(m + 1), target, cfg.form);
            const SupError err = sup_error(op, target, grid, trunc);
            e[m] = err.error;
            max_slack = std::max(max_slack, err.slack);
        }
        report.line(target.name + ": error at m=1 " + fr(e[1]) + ", at m=" + std::to_string(N_max) +
                    " " + fr(e[N_max]) + ", max slack " + fr(max_slack));
        for (const double eps : cfg.eps) {
            const Membership bad = [&](std::size_t k) { return k <= N_max && e[k] >= eps; };
            double previous = HUGE_VAL;
            bool decaying = true;
            std::string trend;
            for (const std::size_t N : cfg.prefixes) {
                const double d = deferred_weighted_A_density(bad, scheme, N);
                const double d_id = deferred_weighted_A_density(bad, classical, N);
                csv += csv_row({target.name, fr(eps), std::to_string(N), fr(d), fr(d_id)});
                trend += (trend.empty() ? "" : ", ") + fr(d);
                decaying = decaying && d <= previous + kRounding;
                previous = d;
            }
            const std::string what = target.name + " eps=" + fr(eps) + " densities [" + trend + "]";
            if (target.is_constant()) {
                report.check(previous == 0.0 && decaying, what + " identically 0");
            } else {
                report.check(decaying, what + " nonincreasing in N");
            }
        }
    }
    return report.finish(csv);
}

CommandResult run_command(const ExperimentConfig& cfg) {
    try {
        validate(cfg);
        switch (cfg.command) {
            case Command::verify_moments: return cmd_verify_moments(cfg);
            case Command::converge: return cmd_converge(cfg);
            case Command::counterexample: return cmd_counterexample(cfg);
            case Command::summability: return cmd_summability(cfg);
        }
    } catch (const ConfigError& e) {
        return {kExitConfigError, std::string("config error: ") + e.what() + "\n", {}};
    } catch (const std::exception& e) {
        return {kExitCheckFailed, std::string("error: ") + e.what() + "\n", {}};
    }
    return {kExitConfigError, "config error: unknown command\n", {}};
}

}  // namespace qkorovkin::harness
