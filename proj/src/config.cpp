#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/harness.hpp"

namespace tdflow {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    fail(ErrorKind::Config, "config: bad value for '" + key + "': '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(d)) bad_value(key, v);
        return d;
    } catch (const std::logic_error&) {
        bad_value(key, v);
    }
}

long long to_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) bad_value(key, v);
        return i;
    } catch (const std::logic_error&) {
        bad_value(key, v);
    }
}

std::size_t to_count(const std::string& key, const std::string& v) {
    const long long i = to_integer(key, v);
    if (i < 0) bad_value(key, v);
    return static_cast<std::size_t>(i);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, v);
}

std::vector<std::string> split_list(const std::string& v) {
    std::string s = v;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

ExperimentKind parse_kind(const std::string& v) {
    if (v == "kernel-report") return ExperimentKind::KernelReport;
    if (v == "verify") return ExperimentKind::Verify;
    if (v == "circle-lte") return ExperimentKind::CircleLte;
    if (v == "graph-converge") return ExperimentKind::GraphConverge;
    if (v == "grid-run") return ExperimentKind::GridRun;
    bad_value("experiment", v);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::KernelReport: return "kernel-report";
        case ExperimentKind::Verify: return "verify";
        case ExperimentKind::CircleLte: return "circle-lte";
        case ExperimentKind::GraphConverge: return "graph-converge";
        case ExperimentKind::GridRun: return "grid-run";
    }
    return "unknown";
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    bool have_schema = false;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"schema",
         [&](const std::string& k, const std::string& v) {
             if (to_integer(k, v) != ExperimentConfig::kSchemaVersion) {
                 fail(ErrorKind::Config, "config: unsupported schema version " + v);
             }
             have_schema = true;
         }},
        {"experiment", [&](const std::string&, const std::string& v) { cfg.kind = parse_kind(v); }},
        {"kernel", [&](const std::string&, const std::string& v) { cfg.kernel = v; }},
        {"initial", [&](const std::string&, const std::string& v) { cfg.initial = v; }},
        {"T", [&](const std::string& k, const std::string& v) { cfg.T = to_double(k, v); }},
        {"steps",
         [&](const std::string& k, const std::string& v) {
             cfg.steps.clear();
             for (const auto& s : split_list(v)) cfg.steps.push_back(to_count(k, s));
         }},
        {"effective_time", [&](const std::string& k, const std::string& v) { cfg.effective_time = to_bool(k, v); }},
        {"nodes", [&](const std::string& k, const std::string& v) { cfg.nodes = to_count(k, v); }},
        {"benchmark_nodes", [&](const std::string& k, const std::string& v) { cfg.benchmark_nodes = to_count(k, v); }},
        {"benchmark_extrapolate",
         [&](const std::string& k, const std::string& v) { cfg.benchmark_extrapolate = to_bool(k, v); }},
        {"benchmark_safety",
         [&](const std::string& k, const std::string& v) { cfg.benchmark_safety = to_double(k, v); }},
        {"window_tolerance",
         [&](const std::string& k, const std::string& v) { cfg.window_tolerance = to_double(k, v); }},
        {"spacing_factor", [&](const std::string& k, const std::string& v) { cfg.spacing_factor = to_double(k, v); }},
        {"radii",
         [&](const std::string& k, const std::string& v) {
             cfg.radii.clear();
             for (const auto& s : split_list(v)) cfg.radii.push_back(to_double(k, s));
         }},
        {"lte_min_exponent",
         [&](const std::string& k, const std::string& v) { cfg.lte_min_exponent = static_cast<int>(to_integer(k, v)); }},
        {"lte_max_exponent",
         [&](const std::string& k, const std::string& v) { cfg.lte_max_exponent = static_cast<int>(to_integer(k, v)); }},
        {"grid_shape", [&](const std::string&, const std::string& v) { cfg.grid_shape = v; }},
        {"grid_n", [&](const std::string& k, const std::string& v) { cfg.grid_n = to_count(k, v); }},
        {"grid_length", [&](const std::string& k, const std::string& v) { cfg.grid_length = to_double(k, v); }},
        {"grid_radius", [&](const std::string& k, const std::string& v) { cfg.grid_radius = to_double(k, v); }},
        {"output", [&](const std::string&, const std::string& v) { cfg.output = v; }},
        {"format",
         [&](const std::string&, const std::string& v) {
             (void)parse_format(v);
             cfg.format = v;
         }},
        {"seed", [&](const std::string& k, const std::string& v) { cfg.seed = to_count(k, v); }},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(ErrorKind::Config, "config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            fail(ErrorKind::Config, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        it->second(key, value);
    }
    if (!have_schema) fail(ErrorKind::Config, "config: missing 'schema = 1'");
    if (!(cfg.T > 0.0)) fail(ErrorKind::Config, "config: T must be positive");
    for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
        if (cfg.steps[i] == 0 || (i > 0 && cfg.steps[i] <= cfg.steps[i - 1])) {
            fail(ErrorKind::Config, "config: steps must be positive and strictly increasing");
        }
    }
    if (cfg.lte_min_exponent > cfg.lte_max_exponent) {
        fail(ErrorKind::Config, "config: lte_min_exponent exceeds lte_max_exponent");
    }
    if (!(cfg.benchmark_safety > 0.0 && cfg.benchmark_safety <= 0.5)) {
        fail(ErrorKind::Config, "config: benchmark_safety must lie in (0, 0.5]");
    }
    return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open config '" + path + "'");
    return parse_config(in);
}

std::string ExperimentConfig::fingerprint(bool include_kernel) const {
    std::ostringstream os;
    os.precision(17);
    os << "schema=" << kSchemaVersion << ";experiment=" << to_string(kind);
    if (include_kernel) os << ";kernel=" << kernel;
    os << ";initial=" << initial << ";T=" << T << ";steps=";
    for (auto s : steps) os << s << ',';
    os << ";effective_time=" << effective_time << ";nodes=" << nodes << ";benchmark_nodes=" << benchmark_nodes
       << ";benchmark_safety=" << benchmark_safety << ";benchmark_extrapolate=" << benchmark_extrapolate << ";window_tolerance=" << window_tolerance
       << ";spacing_factor=" << spacing_factor << ";radii=";
    for (auto r : radii) os << r << ',';
    os << ";lte=" << lte_min_exponent << ':' << lte_max_exponent << ";grid_shape=" << grid_shape
       << ";grid_n=" << grid_n << ";grid_length=" << grid_length << ";grid_radius=" << grid_radius
       << ";seed=" << seed;
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << fnv1a(os.str());
    return hex.str();
}

KernelSpec resolve_kernel(const std::string& choice) {
    if (choice == "gaussian") return KernelSpec::gaussian();
    if (choice == "paper" || choice == "special") return solve_special_kernel();
    return load_kernel(choice);
}

GraphInterface resolve_initial(const std::string& choice, std::size_t n) {
    require(n >= 4, "resolve_initial: need at least 4 nodes");
    if (choice == "half-sine") {
        return GraphInterface::sample(1.0, n, [](double x) { return 0.5 * std::sin(2.0 * std::numbers::pi * x); });
    }
    if (choice == "exp-cos") {
        return GraphInterface::sample(2.0, n, [](double x) { return std::exp(std::cos(std::numbers::pi * x)); });
    }
    return resample(load_graph(choice), n);
}

}  // namespace tdflow
