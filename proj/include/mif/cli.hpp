#ifndef MIF_CLI_HPP
#define MIF_CLI_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mif/config.hpp"

namespace mif::cli {

struct SynthArgs {
    std::string kind;      // example1 | example2 | cube
    std::size_t size = 0;  // 0 = per-kind default (256 for examples, 64 for cube)
    RunConfig cfg;
};

struct DecomposeArgs {
    std::string input;
    bool verify = false;
    RunConfig cfg;
};

struct AceArgs {
    std::string cube_path;
    std::string signature_path;
    bool preprocess = false;
    bool postprocess = false;
    RunConfig cfg;
};

struct RenderArgs {
    std::string input;
    std::string mode; // heatmap | section
    std::string output;
    std::size_t axis = 0;
    std::vector<std::size_t> fixed;
    bool antidiagonal = false;
    std::string plot; // optional PGM for the section polyline
};

void cmd_synth(const SynthArgs& args);
void cmd_decompose(const DecomposeArgs& args);
void cmd_ace(const AceArgs& args);
void cmd_render(const RenderArgs& args);

} // namespace mif::cli

#endif
