#ifndef MIF_FILTERS_HPP
#define MIF_FILTERS_HPP

#include <cstddef>
#include <vector>

#include "mif/grid.hpp"

namespace mif {

/// 1D filter profile sampled on a uniform grid over [-1, 1].
/// Invariants: odd length, nonnegative, endpoints exactly 0, exactly
/// symmetric, unit trapezoidal mass within 1e-12.
struct Filter1D {
    std::vector<double> samples;

    double step() const { return 2.0 / static_cast<double>(samples.size() - 1); }
};

/// Compactly supported k-dimensional kernel with ellipsoidal support.
/// weights are dense of shape (2*radii[a]+1), row-major; unit sum within
/// 1e-12, zero outside the ellipsoid, symmetric under per-axis reflection.
struct FilterKernel {
    std::vector<std::size_t> radii;
    std::vector<double> weights;

    std::size_t ndim() const { return radii.size(); }
    std::vector<std::size_t> shape() const;
    std::size_t cell_count() const;

    /// View as a GridSignal (for save_grid export / inspection).
    GridSignal as_grid() const;
};

/// Smooth compactly supported filter derived from the steady state of a
/// degenerate-diffusion Fokker-Planck evolution on [-1,1] (drift alpha,
/// diffusion beta), post-processed so that rotated kernels stay positive
/// semidefinite. grid_points is the PDE grid; the returned profile is finer.
Filter1D solve_fp_filter(std::size_t grid_points, double drift_weight,
                         double diffusion_weight);

/// Triangular profile: the self-convolution of a uniform filter.
Filter1D double_average_filter(std::size_t half_width_samples);

/// Lift a 1D profile to a k-dimensional kernel with the given per-axis
/// radii: weight(t) = base(rho(t)) for rho(t) = sqrt(sum (t_a/r_a)^2) <= 1,
/// zero outside, normalized to unit sum.
FilterKernel build_gfp(const Filter1D& base, const std::vector<std::size_t>& radii);

/// Per-axis support radii from mean 1D extrema spacing:
/// radius_a = max(1, round(xi * dims[a] / m_a)) for axes with extrema mean
/// m_a > 0 (capped at the mirror period 2*dims[a]-2); extrema-free axes
/// inherit the largest active radius. Spherical mode replicates the rounded
/// mean radius. Throws TrendSignalError when every axis is extrema-free.
std::vector<std::size_t> estimate_support_radii(const GridSignal& signal, double xi,
                                                bool spherical = false);

namespace detail {

/// One explicit conservative finite-volume step of the filter evolution;
/// returns the L1 change. Exposed for the solver's verification loop tests.
double fp_time_step(std::vector<double>& p, double alpha, double beta, double dt);

/// Suggested CFL-limited step for the explicit scheme on n points.
double fp_cfl_step(std::size_t n, double alpha, double beta);

/// Zero-flux steady state of the same discretization (unit max, unnormalized).
std::vector<double> fp_steady_state(std::size_t n, double alpha, double beta);

} // namespace detail

} // namespace mif

#endif
