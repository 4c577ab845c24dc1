#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "piston/io.hpp"

namespace piston::app {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError("not a number: '" + text + "'");
    return v;
}

long long parse_integer(const std::string& text) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("not an integer: '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("not a boolean: '" + text + "'");
}

void validate(RunConfig& cfg) {
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
        throw ConfigError("field 'gamma': must lie in (0, 1], got " + format_double(cfg.gamma));
    }
    if (cfg.machs.empty()) throw ConfigError("field 'mach': missing or empty sweep");
    for (const double m : cfg.machs) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw ConfigError("field 'mach': every Mach number must be positive and finite");
        }
    }
    if (cfg.t_samples.empty()) throw ConfigError("field 't_samples': empty list");
    for (const double t : cfg.t_samples) {
        if (!(t > 0.0)) throw ConfigError("field 't_samples': times must be positive");
    }
    for (const double x : cfg.x_samples) {
        if (x > 0.0) throw ConfigError("field 'x_samples': gas occupies x <= 0");
    }
    if (cfg.fvm.n_cells < 16) throw ConfigError("field 'fvm_n_cells': must be at least 16");
    if (!(cfg.fvm.cfl > 0.0 && cfg.fvm.cfl < 1.0)) throw ConfigError("field 'fvm_cfl': must lie in (0, 1)");
    if (!(cfg.fvm.t_end > 0.0)) throw ConfigError("field 'fvm_t_end': must be positive");
    if (cfg.fvm.delta_cells < 1) throw ConfigError("field 'fvm_delta_cells': must be at least 1");
    if (cfg.fvm.x_min && !(*cfg.fvm.x_min < 0.0)) throw ConfigError("field 'fvm_x_min': must be negative");
    if (cfg.weak.n_test_functions < 1) throw ConfigError("field 'weak_n_test_functions': must be at least 1");
    if (cfg.weak.quadrature < 4) throw ConfigError("field 'weak_quadrature': must be at least 4");
    if (!(cfg.weak.tolerance > 0.0)) throw ConfigError("field 'weak_tolerance': must be positive");
}

}  // namespace

std::vector<double> parse_sweep(const std::string& spec_in) {
    const std::string spec = trim(spec_in);
    if (spec.empty()) throw ConfigError("empty value");
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) throw ConfigError("range must look like a:b:n, got '" + spec + "'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const long long n = parse_integer(parts[2]);
        if (n < 1) throw ConfigError("range point count must be >= 1, got '" + spec + "'");
        if (n == 1) return {a};
        for (long long i = 0; i < n; ++i) {
            out.push_back(i == n - 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string v = trim(item);
        if (v.empty()) throw ConfigError("empty list entry in '" + spec + "'");
        out.push_back(parse_number(v));
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool have_gamma = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "gamma") {
                cfg.gamma = parse_number(value);
                have_gamma = true;
            } else if (key == "mach") {
                cfg.machs = parse_sweep(value);
            } else if (key == "direction") {
                if (value != "advance" && value != "recede") {
                    throw ConfigError("must be 'advance' or 'recede', got '" + value + "'");
                }
                cfg.direction = direction_from_string(value);
            } else if (key == "t_samples") {
                cfg.t_samples = parse_sweep(value);
            } else if (key == "x_samples") {
                cfg.x_samples = parse_sweep(value);
            } else if (key == "verify_weak") {
                cfg.verify_weak = parse_bool(value);
            } else if (key == "verify_fvm") {
                cfg.verify_fvm = parse_bool(value);
            } else if (key == "fvm_n_cells") {
                cfg.fvm.n_cells = static_cast<int>(parse_integer(value));
            } else if (key == "fvm_cfl") {
                cfg.fvm.cfl = parse_number(value);
            } else if (key == "fvm_t_end") {
                cfg.fvm.t_end = parse_number(value);
            } else if (key == "fvm_delta_cells") {
                cfg.fvm.delta_cells = static_cast<int>(parse_integer(value));
            } else if (key == "fvm_x_min") {
                if (value == "auto") {
                    cfg.fvm.x_min.reset();
                } else {
                    cfg.fvm.x_min = parse_number(value);
                }
            } else if (key == "weak_n_test_functions") {
                cfg.weak.n_test_functions = static_cast<std::size_t>(parse_integer(value));
            } else if (key == "weak_quadrature") {
                cfg.weak.quadrature = static_cast<int>(parse_integer(value));
            } else if (key == "weak_tolerance") {
                cfg.weak.tolerance = parse_number(value);
            } else if (key == "output") {
                if (value.empty()) throw ConfigError("empty path");
                cfg.output = value;
            } else if (key == "seed") {
                const long long s = parse_integer(value);
                if (s < 0) throw ConfigError("must be non-negative");
                cfg.seed = static_cast<std::uint64_t>(s);
            } else {
                throw ConfigError("unknown key");
            }
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": field '" + key + "': " + e.what());
        }
    }
    if (!have_gamma) throw ConfigError("field 'gamma': missing");
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace piston::app
