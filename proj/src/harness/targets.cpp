#include "qkorovkin/harness/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkorovkin::harness {

const std::vector<std::string>& builtin_target_names() {
    static const std::vector<std::string> names{"identity", "square", "sine-bump", "abs-shift",
                                                "constant"};
    return names;
}

Target builtin_target(const std::string& name) {
    if (name == "identity") {
        return {name, [](double s) { return s; }, 1u};
    }
    if (name == "square") {
        return {name, [](double s) { return s * s; }, 2u};
    }
    if (name == "sine-bump") {
        return {name, [](double s) { return std::sin(std::numbers::pi * s); }, std::nullopt};
    }
    if (name == "abs-shift") {
        return {name, [](double s) { return std::abs(s - 0.5); }, std::nullopt};
    }
    if (name == "constant") {
        return {name, [](double) { return 1.0; }, 0u};
    }
    throw std::invalid_argument("unknown target function '" + name + "'");
}

Target tabulated_target(std::vector<double> samples) {
    GridFunction g(std::move(samples));
    return {"tabulated", [g = std::move(g)](double s) { return g(s); }, std::nullopt};
}

OperatorEvaluator make_target_operator(const OperatorSpec& spec, const Target& target,
                                       SeriesForm form) {
    if (target.monomial) {
        return make_K_monomial(spec, *target.monomial, form);
    }
    return make_K(spec, target.f, form);
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return xs;
}

SupError sup_error(OperatorEvaluator& op, const Target& target, const std::vector<double>& grid,
                   const Truncation& trunc, double factor) {
    SupError out;
    for (const double x : grid) {
        const EvalResult r = op.evaluate(x, trunc);
        out.error = std::max(out.error, std::abs(factor * r.value - target.f(x)));
        out.slack = std::max(out.slack, factor * r.tail_bound);
        out.p_used = std::max(out.p_used, r.p_used);
        out.mass_reached = out.mass_reached && r.reached_mass_target;
    }
    return out;
}

}  // namespace qkorovkin::harness
