#include "qkorovkin/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qkorovkin::harness {

namespace pt = boost::property_tree;

const char* command_name(Command c) noexcept {
    switch (c) {
        case Command::verify_moments: return "verify-moments";
        case Command::converge: return "converge";
        case Command::counterexample: return "counterexample";
        case Command::summability: return "summability";
    }
    return "?";
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

// Thrown by the value parsers; the loader attaches source, line and field.
struct FieldError {
    std::string message;
};

double parse_real(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw FieldError{"expected a real number, got '" + t + "'"};
    }
    return v;
}

std::size_t parse_size(const std::string& text) {
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw FieldError{"expected a nonnegative integer, got '" + t + "'"};
    }
    return v;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
    std::vector<T> out;
    for (const auto& item : split(text, ',')) {
        out.push_back(parse(item));
    }
    if (out.empty()) {
        throw FieldError{"expected a non-empty list"};
    }
    return out;
}

ParameterRule parse_rule(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    std::string value;
    std::string extra;
    in >> kind >> value;
    if (kind.empty() || value.empty() || (in >> extra)) {
        throw FieldError{"expected 'reciprocal <c>' or 'constant <v>', got '" + trim(text) + "'"};
    }
    ParameterRule rule;
    if (kind == "reciprocal") {
        rule.kind = ParameterRule::Kind::reciprocal;
    } else if (kind == "constant") {
        rule.kind = ParameterRule::Kind::constant;
    } else {
        throw FieldError{"unknown rule kind '" + kind + "'"};
    }
    rule.param = parse_real(value);
    return rule;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"operator", {"r", "n", "q_rule", "beta_rule", "series"}},
        {"target", {"name", "samples"}},
        {"grid", {"points", "x"}},
        {"moments", {"bounds"}},
        {"truncation", {"mass_tol", "p_max"}},
        {"summability", {"scheme", "prefixes", "eps"}},
        {"power_series", {"method", "u"}},
        {"counterexample", {"operator_terms", "check", "horizon"}},
        {"output", {"csv"}},
    };
    return keys;
}

// "section.key" -> 1-based line, for diagnostics only
std::map<std::string, int> index_lines(const std::string& text) {
    std::map<std::string, int> lines;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == ';' || t.front() == '#') {
            continue;
        }
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos) {
            lines.emplace(section + "." + trim(t.substr(0, eq)), number);
        }
    }
    return lines;
}

class Loader {
public:
    Loader(const pt::ptree& tree, std::map<std::string, int> lines, std::string source)
        : tree_(tree), lines_(std::move(lines)), source_(std::move(source)) {}

    void check_known() const {
        for (const auto& [section, body] : tree_) {
            const auto it = known_keys().find(section);
            if (it == known_keys().end()) {
                throw ConfigError(source_ + ": unknown section [" + section + "]");
            }
            for (const auto& [key, value] : body) {
                if (!it->second.contains(key)) {
                    fail(section + "." + key, "unknown key");
                }
            }
        }
    }

    template <class Apply>
    void field(ExperimentConfig& cfg, const std::string& path, Apply apply) const {
        const auto value = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
        if (!value) {
            return;
        }
        cfg.origin[path] = location(path);
        try {
            apply(*value);
        } catch (const FieldError& e) {
            fail(path, e.message);
        }
    }

    [[nodiscard]] std::string location(const std::string& path) const {
        const auto it = lines_.find(path);
        return it == lines_.end() ? source_ : source_ + ":" + std::to_string(it->second);
    }

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw ConfigError(location(path) + ": " + path + ": " + message);
    }

private:
    const pt::ptree& tree_;
    std::map<std::string, int> lines_;
    std::string source_;
};

// Prefixes the file location when the field came from a config file.
[[noreturn]] void invalid(const ExperimentConfig& cfg, const std::string& field, const std::string& message) {
    const auto it = cfg.origin.find(field);
    throw ConfigError((it == cfg.origin.end() ? "" : it->second + ": ") + field + ": " + message);
}

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](const T& a, const T& b) { return !(a < b); }) ==
           v.end();
}

}  // namespace

SequenceSpec ExperimentConfig::sequence() const {
    try {
        return SequenceSpec(r, q_rule, beta_rules);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("operator: ") + e.what());
    }
}

Target ExperimentConfig::target_function() const {
    try {
        return target == "tabulated" ? tabulated_target(samples) : builtin_target(target);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("target.name: ") + e.what());
    }
}

Truncation ExperimentConfig::truncation() const {
    try {
        return Truncation(mass_tol, p_max);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("truncation: ") + e.what());
    }
}

ExperimentConfig preset(Command c) {
    ExperimentConfig cfg;
    cfg.command = c;
    cfg.x_points = {0.0, 0.5, 1.0};
    cfg.n_ladder = {8, 16, 32, 64};
    cfg.prefixes = {64, 128, 256, 512};
    cfg.eps = {0.1, 0.01};
    cfg.u_ladder = {0.9, 0.99, 0.999};
    cfg.check_points = {4, 9, 16, 25};
    switch (c) {
        case Command::verify_moments:
            cfg.n_ladder = {2, 8, 32};
            break;
        case Command::converge:
            cfg.p_max = 65536;
            break;
        case Command::counterexample:
            cfg.target = "constant";
            cfg.p_max = 65536;
            break;
        case Command::summability:
            cfg.form = SeriesForm::marginal;
            cfg.p_max = 65536;
            break;
    }
    return cfg;
}

void load_config(ExperimentConfig& cfg, std::istream& in, const std::string& source) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    pt::ptree tree;
    try {
        std::istringstream stream(text);
        pt::ini_parser::read_ini(stream, tree);
    } catch (const pt::ini_parser_error& e) {
        std::ostringstream msg;
        msg << source << ":" << e.line() << ": " << e.message();
        throw ConfigError(msg.str());
    }
    const Loader load(tree, index_lines(text), source);
    load.check_known();

    load.field(cfg, "operator.r", [&](const std::string& v) { cfg.r = parse_size(v); });
    load.field(cfg, "operator.n", [&](const std::string& v) {
        cfg.n_ladder = parse_list<std::size_t>(v, parse_size);
    });
    load.field(cfg, "operator.q_rule", [&](const std::string& v) { cfg.q_rule = parse_rule(v); });
    load.field(cfg, "operator.beta_rule", [&](const std::string& v) {
        cfg.beta_rules.clear();
        for (const auto& item : split(v, ';')) {
            cfg.beta_rules.push_back(parse_rule(item));
        }
    });
    load.field(cfg, "operator.series", [&](const std::string& v) {
        const std::string t = trim(v);
        if (t == "joint") {
            cfg.form = SeriesForm::joint;
        } else if (t == "marginal") {
            cfg.form = SeriesForm::marginal;
        } else {
            throw FieldError{"expected 'joint' or 'marginal', got '" + t + "'"};
        }
    });
    load.field(cfg, "target.name", [&](const std::string& v) { cfg.target = trim(v); });
    load.field(cfg, "target.samples", [&](const std::string& v) {
        cfg.samples = parse_list<double>(v, parse_real);
    });
    load.field(cfg, "grid.points", [&](const std::string& v) { cfg.grid_points = parse_size(v); });
    load.field(cfg, "grid.x", [&](const std::string& v) { cfg.x_points = parse_list<double>(v, parse_real); });
    load.field(cfg, "moments.bounds", [&](const std::string& v) { cfg.bounds = trim(v); });
    load.field(cfg, "truncation.mass_tol", [&](const std::string& v) { cfg.mass_tol = parse_real(v); });
    load.field(cfg, "truncation.p_max", [&](const std::string& v) { cfg.p_max = parse_size(v); });
    load.field(cfg, "summability.scheme", [&](const std::string& v) { cfg.scheme = trim(v); });
    load.field(cfg, "summability.prefixes", [&](const std::string& v) {
        cfg.prefixes = parse_list<std::size_t>(v, parse_size);
    });
    load.field(cfg, "summability.eps", [&](const std::string& v) { cfg.eps = parse_list<double>(v, parse_real); });
    load.field(cfg, "power_series.method", [&](const std::string& v) { cfg.method = trim(v); });
    load.field(cfg, "power_series.u", [&](const std::string& v) { cfg.u_ladder = parse_list<double>(v, parse_real); });
    load.field(cfg, "counterexample.operator_terms", [&](const std::string& v) {
        cfg.operator_terms = parse_size(v);
    });
    load.field(cfg, "counterexample.check", [&](const std::string& v) {
        cfg.check_points = parse_list<std::size_t>(v, parse_size);
    });
    load.field(cfg, "counterexample.horizon", [&](const std::string& v) { cfg.horizon = parse_size(v); });
    load.field(cfg, "output.csv", [&](const std::string& v) { cfg.csv_path = trim(v); });
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    load_config(cfg, in, path);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.r == 0) {
        invalid(cfg, "operator.r", "must be at least 1");
    }
    if (cfg.beta_rules.size() != 1 && cfg.beta_rules.size() != cfg.r) {
        invalid(cfg, "operator.beta_rule", "give one rule or exactly r rules");
    }
    if (cfg.n_ladder.empty() || !strictly_increasing(cfg.n_ladder)) {
        invalid(cfg, "operator.n", "n-ladder must be non-empty and strictly increasing");
    }
    if (cfg.n_ladder.front() < 2) {
        invalid(cfg, "operator.n", "the operator needs n >= 2");
    }
    for (const std::size_t n : cfg.n_ladder) {
        const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
        if (!in_unit(cfg.q_rule.at(n))) {
            invalid(cfg, "operator.q_rule", "q_n = " + std::to_string(cfg.q_rule.at(n)) + " at n = " +
                                                std::to_string(n) + " lies outside (0, 1)");
        }
        for (const ParameterRule& rule : cfg.beta_rules) {
            if (!in_unit(rule.at(n))) {
                invalid(cfg, "operator.beta_rule", "beta_n = " + std::to_string(rule.at(n)) + " at n = " +
                                                       std::to_string(n) + " lies outside (0, 1)");
            }
        }
    }
    const SequenceSpec seq = cfg.sequence();
    for (const std::size_t n : cfg.n_ladder) {
        try {
            (void)seq.at(n);
        } catch (const std::invalid_argument& e) {
            invalid(cfg, "operator", "at n = " + std::to_string(n) + ": " + e.what());
        }
    }
    if (cfg.target == "tabulated" && cfg.samples.size() < 2) {
        invalid(cfg, "target.samples", "a tabulated target needs at least two samples");
    }
    (void)cfg.target_function();
    if (cfg.grid_points < 2) {
        invalid(cfg, "grid.points", "must be at least 2");
    }
    if (cfg.x_points.empty()) {
        invalid(cfg, "grid.x", "must be non-empty");
    }
    for (const double x : cfg.x_points) {
        if (!(x >= 0.0 && x <= 1.0)) {
            invalid(cfg, "grid.x", "points must lie in [0, 1]");
        }
    }
    if (cfg.bounds != "stated" && cfg.bounds != "corrected") {
        invalid(cfg, "moments.bounds", "expected stated or corrected, got '" + cfg.bounds + "'");
    }
    (void)cfg.truncation();
    if (cfg.scheme != "default" && cfg.scheme != "identity" && cfg.scheme != "prefix") {
        invalid(cfg, "summability.scheme", "expected default, identity or prefix, got '" + cfg.scheme + "'");
    }
    if (cfg.prefixes.empty() || !strictly_increasing(cfg.prefixes) || cfg.prefixes.front() < 2) {
        invalid(cfg, "summability.prefixes", "must be strictly increasing and at least 2");
    }
    for (const double e : cfg.eps) {
        if (!(e > 0.0)) {
            invalid(cfg, "summability.eps", "thresholds must be positive");
        }
    }
    if (cfg.eps.empty()) {
        invalid(cfg, "summability.eps", "must be non-empty");
    }
    if (cfg.method != "abel" && cfg.method != "borel") {
        invalid(cfg, "power_series.method", "expected abel or borel, got '" + cfg.method + "'");
    }
    const double radius = cfg.method == "abel" ? 1.0 : HUGE_VAL;
    if (cfg.u_ladder.empty() || !strictly_increasing(cfg.u_ladder)) {
        invalid(cfg, "power_series.u", "ladder must be non-empty and strictly increasing");
    }
    for (const double u : cfg.u_ladder) {
        if (!(u > 0.0 && u < radius)) {
            invalid(cfg, "power_series.u", "ladder points must lie in (0, R)");
        }
    }
    for (const std::size_t m : cfg.check_points) {
        if (m == 0) {
            invalid(cfg, "counterexample.check", "sequence indices start at 1");
        }
    }
    if (cfg.horizon == 0) {
        invalid(cfg, "counterexample.horizon", "must be at least 1");
    }
}

}  // namespace qkorovkin::harness
