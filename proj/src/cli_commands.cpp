#include "mif/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mif/decompose.hpp"
#include "mif/detail/numeric.hpp"
#include "mif/errors.hpp"
#include "mif/hyperspectral.hpp"
#include "mif/raster.hpp"
#include "mif/synth.hpp"

namespace fs = std::filesystem;

namespace mif::cli {

namespace {

std::string axis_name(std::size_t a) {
    static const char* named[] = {"x", "y", "z"};
    if (a < 3) return named[a];
    return "a" + std::to_string(a);
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    return dir / name;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridFormat format_for(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"
               ? GridFormat::csv_2d
               : GridFormat::native_binary;
}

} // namespace

void cmd_synth(const SynthArgs& args) {
    validate_config(args.cfg);
    if (args.kind == "example1" || args.kind == "example2") {
        std::size_t size = args.size ? args.size : 256;
        SynthPair pair = args.kind == "example1" ? synth_example1(size)
                                                 : synth_example2(size);
        save_grid(pair.mixture, out_path(args.cfg, "mixture.mifg").string(),
                  GridFormat::native_binary);
        save_grid(pair.component1, out_path(args.cfg, "component1.mifg").string(),
                  GridFormat::native_binary);
        save_grid(pair.component2, out_path(args.cfg, "component2.mifg").string(),
                  GridFormat::native_binary);
        return;
    }
    if (args.kind == "cube") {
        CubeParams p;
        if (args.size) p.h = p.v = args.size;
        SynthCube sc = synth_cube(args.cfg.seed, p);
        save_cube(sc.cube, out_path(args.cfg, "cube.mifh").string());
        save_signature(sc.signature, out_path(args.cfg, "signature.csv").string());
        std::ofstream os(out_path(args.cfg, "truth.txt"));
        os << "block.i=" << sc.params.block_i << "\n";
        os << "block.j=" << sc.params.block_j << "\n";
        os << "block.size=" << sc.params.block_size << "\n";
        os << "spike.count=" << sc.spikes.size() << "\n";
        for (std::size_t s = 0; s < sc.spikes.size(); ++s)
            os << "spike." << s + 1 << "=" << sc.spikes[s].first << ","
               << sc.spikes[s].second << "\n";
        return;
    }
    throw ValidationError("synth: unknown kind '" + args.kind +
                          "' (expected example1|example2|cube)");
}

void cmd_decompose(const DecomposeArgs& args) {
    validate_config(args.cfg);
    GridSignal input = load_grid(args.input, format_for(args.input));
    MifOptions options = args.cfg.to_mif_options();
    Decomposition dec = mif(input, options);

    for (std::size_t i = 0; i < dec.imfs.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "imf_%02zu.mifg", i + 1);
        save_grid(dec.imfs[i], out_path(args.cfg, name).string(), GridFormat::native_binary);
    }
    save_grid(dec.remainder, out_path(args.cfg, "remainder.mifg").string(),
              GridFormat::native_binary);

    GridSignal recon = reconstruct(dec);
    double err = 0.0, scale = detail::max_abs(input.values);
    for (std::size_t i = 0; i < recon.values.size(); ++i)
        err = std::max(err, std::fabs(recon.values[i] - input.values[i]));
    double rel = scale > 0.0 ? err / scale : err;

    ExtremaStats in_stats = extrema_stats(input);
    std::ofstream os(out_path(args.cfg, "report.txt"));
    os << "input.path=" << args.input << "\n";
    os << "input.ndim=" << input.ndim() << "\n";
    for (std::size_t a = 0; a < input.ndim(); ++a)
        os << "input.dim." << axis_name(a) << "=" << input.dims[a] << "\n";
    for (std::size_t a = 0; a < input.ndim(); ++a)
        os << "input.extrema." << axis_name(a) << "="
           << format_real(in_stats.per_axis_mean_count[a]) << "\n";
    os << "input.extrema.total_mean=" << format_real(in_stats.total_mean) << "\n";
    os << "imf.count=" << dec.imfs.size() << "\n";
    for (std::size_t i = 0; i < dec.records.size(); ++i) {
        const ImfRecord& r = dec.records[i];
        for (std::size_t a = 0; a < r.radii.size(); ++a)
            os << "imf." << i + 1 << ".radius." << axis_name(a) << "=" << r.radii[a] << "\n";
        os << "imf." << i + 1 << ".iters=" << r.iters << "\n";
        os << "imf." << i + 1 << ".delta=" << format_real(r.final_delta) << "\n";
        ExtremaStats es = extrema_stats(dec.imfs[i]);
        os << "imf." << i + 1 << ".extrema.total_mean=" << format_real(es.total_mean) << "\n";
    }
    ExtremaStats rem_stats = extrema_stats(dec.remainder);
    os << "remainder.extrema.total_mean=" << format_real(rem_stats.total_mean) << "\n";
    os << "recon.relative_error=" << format_real(rel) << "\n";
    os.close();

    if (args.verify && rel > 1e-10)
        throw NumericError("decompose --verify: reconstruction error " + format_real(rel) +
                           " exceeds 1e-10");
}

void cmd_ace(const AceArgs& args) {
    validate_config(args.cfg);
    HyperCube cube = load_cube(args.cube_path);
    std::vector<double> target = load_signature(args.signature_path);
    if (target.size() != cube.d)
        throw ValidationError("ace: signature length " + std::to_string(target.size()) +
                              " does not match cube channels " + std::to_string(cube.d));

    std::vector<double> sigma = covariance(cube, args.cfg.ace_ridge);
    GridSignal raw = ace_classify(cube, target, sigma);
    save_grid(raw, out_path(args.cfg, "ace_raw.mifg").string(), GridFormat::native_binary);
    render_ace_map(raw, out_path(args.cfg, "ace_raw.pgm").string());

    if (!args.preprocess && !args.postprocess) return;

    MifOptions options = args.cfg.to_mif_options();
    GridSignal processed = raw;
    if (args.preprocess) {
        HyperCube pre = preprocess_cube(cube, options);
        std::vector<double> sigma2 = covariance(pre, args.cfg.ace_ridge);
        processed = ace_classify(pre, target, sigma2);
    }
    if (args.postprocess) processed = postprocess_map(processed, options);
    save_grid(processed, out_path(args.cfg, "ace_processed.mifg").string(),
              GridFormat::native_binary);
    render_ace_map(processed, out_path(args.cfg, "ace_processed.pgm").string());
}

void cmd_render(const RenderArgs& args) {
    GridSignal g = load_grid(args.input, format_for(args.input));
    if (args.mode == "heatmap") {
        render_heatmap(g, args.output);
        return;
    }
    if (args.mode == "section") {
        std::vector<double> series = args.antidiagonal
                                         ? slice_antidiagonal(g)
                                         : slice_1d(g, args.axis, args.fixed);
        write_section_text(series, args.output);
        if (!args.plot.empty()) render_section_plot(series, args.plot);
        return;
    }
    throw ValidationError("render: unknown mode '" + args.mode +
                          "' (expected heatmap|section)");
}

} // namespace mif::cli
