#include "mif/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mif/errors.hpp"

namespace mif {

void write_pgm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<std::uint8_t>& pixels) {
    if (pixels.size() != width * height)
        throw ValidationError("write_pgm: pixel count does not match dimensions");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os << "P5\n" << width << " " << height << "\n255\n";
    os.write(reinterpret_cast<const char*>(pixels.data()),
             static_cast<std::streamsize>(pixels.size()));
    if (!os) throw ValidationError("write failure: " + path);
}

void render_heatmap(const GridSignal& g, const std::string& path) {
    if (g.ndim() != 2) throw ValidationError("heatmap rendering requires a 2D grid");
    double lo = g.values[0], hi = g.values[0];
    for (double v : g.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<std::uint8_t> px(g.values.size());
    if (hi == lo) {
        std::fill(px.begin(), px.end(), static_cast<std::uint8_t>(128));
    } else {
        double scale = 255.0 / (hi - lo);
        for (std::size_t i = 0; i < g.values.size(); ++i)
            px[i] = static_cast<std::uint8_t>(std::lround((g.values[i] - lo) * scale));
    }
    write_pgm(path, g.dims[1], g.dims[0], px);
}

void render_ace_map(const GridSignal& scores, const std::string& path) {
    if (scores.ndim() != 2) throw ValidationError("ACE raster requires a 2D score map");
    std::vector<std::uint8_t> px(scores.values.size());
    for (std::size_t i = 0; i < scores.values.size(); ++i) {
        double s = std::clamp(scores.values[i], 0.0, 1.0);
        px[i] = static_cast<std::uint8_t>(std::lround((1.0 - s) * 255.0));
    }
    write_pgm(path, scores.dims[1], scores.dims[0], px);
}

void write_section_text(const std::vector<double>& series, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os.precision(17);
    for (std::size_t i = 0; i < series.size(); ++i) os << i << " " << series[i] << "\n";
    if (!os) throw ValidationError("write failure: " + path);
}

void render_section_plot(const std::vector<double>& series, const std::string& path,
                         std::size_t height) {
    if (series.empty()) throw ValidationError("section plot: empty series");
    if (height < 2) throw ValidationError("section plot: height must be >= 2");
    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const std::size_t w = series.size();
    std::vector<std::uint8_t> px(w * height, 255);
    auto to_row = [&](double v) -> std::size_t {
        if (hi == lo) return height / 2;
        double t = (v - lo) / (hi - lo);
        return static_cast<std::size_t>(std::lround((1.0 - t) * static_cast<double>(height - 1)));
    };
    std::size_t prev = to_row(series[0]);
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t r = to_row(series[i]);
        std::size_t a = std::min(prev, r), b = std::max(prev, r);
        for (std::size_t y = a; y <= b; ++y) px[y * w + i] = 0;
        prev = r;
    }
    write_pgm(path, w, height, px);
}

} // namespace mif
