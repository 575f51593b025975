#ifndef MIF_RASTER_HPP
#define MIF_RASTER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mif/grid.hpp"

namespace mif {

/// Binary PGM (P5), 8-bit.
void write_pgm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<std::uint8_t>& pixels);

/// Linear min-max grayscale of a 2D grid (min -> 0, max -> 255);
/// a constant grid maps to uniform 128.
void render_heatmap(const GridSignal& g, const std::string& path);

/// Absolute inverted mapping for ACE score maps: score 1 -> black (0),
/// score 0 -> white (255). Scores are clamped to [0,1] for display.
void render_ace_map(const GridSignal& scores, const std::string& path);

/// Two-column "index value" text for a 1D section.
void write_section_text(const std::vector<double>& series, const std::string& path);

/// Minimal line plot of a section into a PGM raster.
void render_section_plot(const std::vector<double>& series, const std::string& path,
                         std::size_t height = 200);

} // namespace mif

#endif
