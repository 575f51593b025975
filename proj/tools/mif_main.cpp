#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mif/cli.hpp"
#include "mif/errors.hpp"

namespace {

mif::RunConfig build_config(const std::string& config_path,
                            const std::vector<std::string>& sets,
                            const std::string& out_dir) {
    mif::RunConfig cfg =
        config_path.empty() ? mif::RunConfig{} : mif::load_config(config_path);
    for (const std::string& s : sets) mif::apply_setting(cfg, s);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    mif::validate_config(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multidimensional Iterative Filtering toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--set", sets, "override a config key (key=value)");
    app.add_option("--out", out_dir, "output directory");

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string synth_kind;
    std::size_t synth_size = 0;
    synth->add_option("kind", synth_kind, "example1|example2|cube")->required();
    synth->add_option("--size", synth_size, "samples per spatial axis");

    auto* dec = app.add_subcommand("decompose", "decompose a grid into IMFs");
    std::string dec_input;
    bool dec_verify = false;
    dec->add_option("input", dec_input, "input grid (.mifg or .csv)")->required();
    dec->add_flag("--verify", dec_verify, "fail unless reconstruction matches input");

    auto* ace = app.add_subcommand("ace", "ACE classification of a hypercube");
    std::string ace_cube, ace_sig;
    bool ace_pre = false, ace_post = false;
    ace->add_option("cube", ace_cube, "hypercube (.mifh)")->required();
    ace->add_option("signature", ace_sig, "target signature (one-line csv)")->required();
    ace->add_flag("--preprocess", ace_pre, "remove first IMF of every channel first");
    ace->add_flag("--postprocess", ace_post, "remove first IMF of the score map");

    auto* ren = app.add_subcommand("render", "raster or section output for a grid");
    mif::cli::RenderArgs ren_args;
    std::vector<std::size_t> ren_fixed;
    ren->add_option("input", ren_args.input, "input grid (.mifg or .csv)")->required();
    ren->add_option("--mode", ren_args.mode, "heatmap|section")->required();
    ren->add_option("--output", ren_args.output, "output file")->required();
    ren->add_option("--axis", ren_args.axis, "section axis");
    ren->add_option("--fixed", ren_fixed, "fixed indices of the other axes");
    ren->add_flag("--antidiagonal", ren_args.antidiagonal, "anti-diagonal section");
    ren->add_option("--plot", ren_args.plot, "also draw the section as a PGM");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*synth) {
            mif::cli::SynthArgs a;
            a.kind = synth_kind;
            a.size = synth_size;
            a.cfg = build_config(config_path, sets, out_dir);
            mif::cli::cmd_synth(a);
        } else if (*dec) {
            mif::cli::DecomposeArgs a;
            a.input = dec_input;
            a.verify = dec_verify;
            a.cfg = build_config(config_path, sets, out_dir);
            mif::cli::cmd_decompose(a);
        } else if (*ace) {
            mif::cli::AceArgs a;
            a.cube_path = ace_cube;
            a.signature_path = ace_sig;
            a.preprocess = ace_pre;
            a.postprocess = ace_post;
            a.cfg = build_config(config_path, sets, out_dir);
            mif::cli::cmd_ace(a);
        } else if (*ren) {
            ren_args.fixed = ren_fixed;
            mif::cli::cmd_render(ren_args);
        }
    } catch (const mif::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const mif::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
    return 0;
}
