#include "mif/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "mif/errors.hpp"

namespace mif {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ValidationError("config: bad real for " + key + ": '" + v + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    char* end = nullptr;
    unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ValidationError("config: bad integer for " + key + ": '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ValidationError("config: bad boolean for " + key + ": '" + v + "'");
}

} // namespace

MifOptions RunConfig::to_mif_options() const {
    MifOptions o;
    o.filter.kind = filter_kind == "fp" ? FilterSpec::Kind::fokker_planck
                                        : FilterSpec::Kind::double_average;
    o.filter.alpha = fp_alpha;
    o.filter.beta = fp_beta;
    o.filter.grid_points = fp_grid_points;
    o.filter.half_width = filter_half_width;
    o.xi = support_xi;
    o.spherical = support_spherical;
    o.stop.inner_delta = stop_inner_delta;
    o.stop.max_inner_iters = stop_max_inner;
    o.stop.max_imfs = stop_max_imfs;
    o.boundary = boundary == "periodic" ? Boundary::periodic : Boundary::symmetric;
    return o;
}

void apply_setting(RunConfig& cfg, const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("config: expected key=value, got '" + assignment + "'");
    std::string key = trim(assignment.substr(0, eq));
    std::string val = trim(assignment.substr(eq + 1));
    if (key == "fp.alpha")
        cfg.fp_alpha = parse_real(key, val);
    else if (key == "fp.beta")
        cfg.fp_beta = parse_real(key, val);
    else if (key == "fp.grid_points")
        cfg.fp_grid_points = static_cast<std::size_t>(parse_uint(key, val));
    else if (key == "filter.kind")
        cfg.filter_kind = val;
    else if (key == "filter.half_width")
        cfg.filter_half_width = static_cast<std::size_t>(parse_uint(key, val));
    else if (key == "support.xi")
        cfg.support_xi = parse_real(key, val);
    else if (key == "support.spherical")
        cfg.support_spherical = parse_bool(key, val);
    else if (key == "stop.inner_delta")
        cfg.stop_inner_delta = parse_real(key, val);
    else if (key == "stop.max_inner_iters")
        cfg.stop_max_inner = static_cast<std::size_t>(parse_uint(key, val));
    else if (key == "stop.max_imfs")
        cfg.stop_max_imfs = static_cast<std::size_t>(parse_uint(key, val));
    else if (key == "boundary")
        cfg.boundary = val;
    else if (key == "ace.ridge")
        cfg.ace_ridge = parse_real(key, val);
    else if (key == "seed")
        cfg.seed = parse_uint(key, val);
    else if (key == "output.dir")
        cfg.output_dir = val;
    else
        throw ValidationError("config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open config: " + path);
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            apply_setting(cfg, t);
        } catch (const ValidationError& e) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (!(cfg.fp_alpha > 0.0)) throw ValidationError("config: fp.alpha must be positive");
    if (!(cfg.fp_beta > 0.0)) throw ValidationError("config: fp.beta must be positive");
    if (cfg.fp_grid_points < 33 || cfg.fp_grid_points % 2 == 0 || cfg.fp_grid_points > 8193)
        throw ValidationError("config: fp.grid_points must be odd, in [33, 8193]");
    if (cfg.filter_kind != "fp" && cfg.filter_kind != "double-average")
        throw ValidationError("config: filter.kind must be fp or double-average");
    if (cfg.filter_half_width < 1)
        throw ValidationError("config: filter.half_width must be >= 1");
    if (!(cfg.support_xi > 0.0)) throw ValidationError("config: support.xi must be positive");
    if (!(cfg.stop_inner_delta > 0.0 && cfg.stop_inner_delta < 1.0))
        throw ValidationError("config: stop.inner_delta must lie in (0,1)");
    if (cfg.stop_max_inner < 1)
        throw ValidationError("config: stop.max_inner_iters must be >= 1");
    if (cfg.stop_max_imfs < 1) throw ValidationError("config: stop.max_imfs must be >= 1");
    if (cfg.boundary != "symmetric" && cfg.boundary != "periodic")
        throw ValidationError("config: boundary must be symmetric or periodic");
    if (cfg.ace_ridge < 0.0) throw ValidationError("config: ace.ridge must be nonnegative");
    if (cfg.output_dir.empty()) throw ValidationError("config: output.dir must be nonempty");
}

} // namespace mif
