#ifndef MIF_CONFIG_HPP
#define MIF_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mif/decompose.hpp"

namespace mif {

/// Flat key=value run configuration. File values override defaults,
/// --set overrides win over the file. Every numeric range is validated.
struct RunConfig {
    double fp_alpha = 1.0;              // fp.alpha
    double fp_beta = 1.0;               // fp.beta
    std::size_t fp_grid_points = 257;   // fp.grid_points (odd, >= 33)
    std::string filter_kind = "fp";     // filter.kind: fp | double-average
    std::size_t filter_half_width = 8;  // filter.half_width
    double support_xi = 6.4;            // support.xi
    bool support_spherical = false;     // support.spherical
    double stop_inner_delta = 1e-3;     // stop.inner_delta
    std::size_t stop_max_inner = 200;   // stop.max_inner_iters
    std::size_t stop_max_imfs = 20;     // stop.max_imfs
    std::string boundary = "symmetric"; // boundary: symmetric | periodic
    double ace_ridge = 1e-6;            // ace.ridge
    std::uint64_t seed = 20240613;      // seed
    std::string output_dir = ".";       // output.dir

    MifOptions to_mif_options() const;
};

/// Parse a config file of key=value lines ('#' comments allowed).
RunConfig load_config(const std::string& path);

/// Apply one "key=value" assignment; throws ValidationError on unknown keys
/// or malformed values.
void apply_setting(RunConfig& cfg, const std::string& assignment);

/// Range-check everything; throws ValidationError.
void validate_config(const RunConfig& cfg);

} // namespace mif

#endif
