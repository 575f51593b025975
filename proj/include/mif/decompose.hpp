#ifndef MIF_DECOMPOSE_HPP
#define MIF_DECOMPOSE_HPP

#include <cstddef>
#include <vector>

#include "mif/filters.hpp"
#include "mif/grid.hpp"

namespace mif {

enum class Boundary { symmetric, periodic };

enum class ConvStrategy { automatic, direct, spectral };

/// Inner/outer loop termination knobs.
struct StopCriteria {
    double inner_delta = 1e-3;            // relative L2 change threshold, in (0,1)
    std::size_t max_inner_iters = 200;
    std::size_t max_imfs = 20;
    double outer_extrema_threshold = 2.0; // mean-extrema floor of Table-style outer loop
};

struct FilterSpec {
    enum class Kind { fokker_planck, double_average };
    Kind kind = Kind::fokker_planck;
    double alpha = 1.0;
    double beta = 1.0;
    std::size_t grid_points = 257;  // FP solver grid
    std::size_t half_width = 8;     // double-average profile resolution
};

struct MifOptions {
    FilterSpec filter;
    double xi = 6.4;
    bool spherical = false;
    StopCriteria stop;
    Boundary boundary = Boundary::symmetric;
};

Filter1D make_base_filter(const FilterSpec& spec);

/// Moving average L(f): output(x) = sum_t f(ext(x+t)) w(t) under the
/// boundary policy. Strategy 'automatic' picks direct summation for small
/// problems and the transform route otherwise; both agree within 1e-10.
GridSignal moving_average(const GridSignal& signal, const FilterKernel& kernel,
                          Boundary boundary,
                          ConvStrategy strategy = ConvStrategy::automatic);

/// Fluctuation S(f) = f - L(f).
GridSignal fluctuation(const GridSignal& signal, const FilterKernel& kernel,
                       Boundary boundary,
                       ConvStrategy strategy = ConvStrategy::automatic);

struct SiftResult {
    GridSignal imf;
    std::size_t iters = 0;
    double final_delta = 0.0;
};

/// Inner loop: iterate f <- f - L(f) until ||L(f)||_2 / ||f||_2 < inner_delta
/// or the iteration cap. A zero-norm iterate returns immediately as a zero IMF.
SiftResult sift(const GridSignal& signal, const FilterKernel& kernel,
                const StopCriteria& stop, Boundary boundary);

struct ImfRecord {
    std::vector<std::size_t> radii;
    std::size_t iters = 0;
    double final_delta = 0.0;
};

struct Decomposition {
    std::vector<GridSignal> imfs;
    GridSignal remainder;
    std::vector<ImfRecord> records;
};

/// Outer loop: while the residual's mean extrema count stays >= the
/// threshold, estimate the support from the residual, sift one IMF and
/// subtract it. Support estimation reporting a trend ends the loop normally.
Decomposition mif(const GridSignal& signal, const MifOptions& options = {});
Decomposition mif(const GridSignal& signal, const Filter1D& base,
                  const MifOptions& options);

/// Element-wise sum of all IMFs plus the remainder.
GridSignal reconstruct(const Decomposition& dec);

/// Eigenvalues of the periodic moving-average operator on a grid of the
/// given dims: the DFT of the kernel folded into the period (real by
/// symmetry). Returned as the half-spectrum the real transform produces;
/// min/max over it equal min/max over the full spectrum.
std::vector<double> periodic_operator_spectrum(const FilterKernel& kernel,
                                               const std::vector<std::size_t>& dims);

} // namespace mif

#endif
