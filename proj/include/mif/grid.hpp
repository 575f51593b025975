#ifndef MIF_GRID_HPP
#define MIF_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mif {

/// Dense k-dimensional real signal, row-major (last axis fastest).
/// Invariants: ndim >= 1, every dim >= 1, values.size() == product(dims),
/// all values finite.
struct GridSignal {
    std::vector<std::size_t> dims;
    std::vector<double> values;

    std::size_t ndim() const { return dims.size(); }
    std::size_t size() const { return values.size(); }

    /// Row-major flat offset of a multi-index.
    std::size_t offset(const std::vector<std::size_t>& idx) const;
};

GridSignal make_grid(std::vector<std::size_t> dims, double fill = 0.0);

/// Throws ValidationError on any invariant breach.
void validate_grid(const GridSignal& g);

enum class GridFormat { native_binary, csv_2d };

GridSignal load_grid(const std::string& path, GridFormat format);
void save_grid(const GridSignal& g, const std::string& path, GridFormat format);

/// Copy of the 1D line along `axis` through the point given by `fixed`
/// (indices of the other k-1 axes, in axis order).
std::vector<double> slice_1d(const GridSignal& g, std::size_t axis,
                             const std::vector<std::size_t>& fixed);

/// Anti-diagonal section of a square 2D grid: cells (i, n-1-i).
std::vector<double> slice_antidiagonal(const GridSignal& g);

/// Strict interior extrema after collapsing runs of equal values.
/// Endpoints never count; series shorter than 3 distinct samples give 0.
std::size_t count_extrema(const std::vector<double>& series);
std::size_t count_extrema(const double* data, std::size_t n, std::size_t stride = 1);

/// Mean extrema counts of all 1D slices, per axis and overall.
struct ExtremaStats {
    std::vector<double> per_axis_mean_count;
    double total_mean = 0.0;
};

ExtremaStats extrema_stats(const GridSignal& g);

} // namespace mif

#endif
