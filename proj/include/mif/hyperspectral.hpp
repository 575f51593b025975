#ifndef MIF_HYPERSPECTRAL_HPP
#define MIF_HYPERSPECTRAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mif/decompose.hpp"
#include "mif/grid.hpp"

namespace mif {

/// h x v pixels, d frequency channels, channel-minor layout:
/// value index = (i*v + j)*d + c, so signatures are contiguous.
struct HyperCube {
    std::size_t h = 0, v = 0, d = 0;
    std::vector<double> values;

    std::size_t pixel_count() const { return h * v; }
    const double* signature(std::size_t i, std::size_t j) const {
        return values.data() + (i * v + j) * d;
    }
    double* signature(std::size_t i, std::size_t j) {
        return values.data() + (i * v + j) * d;
    }

    /// Copy of one frequency channel as an h x v grid.
    GridSignal channel(std::size_t c) const;
    void set_channel(std::size_t c, const GridSignal& g);
};

HyperCube make_cube(std::size_t h, std::size_t v, std::size_t d, double fill = 0.0);
void validate_cube(const HyperCube& cube);

HyperCube load_cube(const std::string& path);
void save_cube(const HyperCube& cube, const std::string& path);

/// One-line CSV of d reals.
std::vector<double> load_signature(const std::string& path);
void save_signature(const std::vector<double>& s, const std::string& path);

/// Mean-centered sample covariance over the h*v observations plus
/// ridge*trace/d on the diagonal; exactly symmetric. d x d, row-major.
std::vector<double> covariance(const HyperCube& cube, double ridge);

/// ACE score per pixel: [s_ij' S^-1 s_c]^2 / (s_c' S^-1 s_c * s_ij' S^-1 s_ij),
/// evaluated through one Cholesky factorization of S. Zero-signature pixels
/// score 0. Scores land in [0,1] up to roundoff.
GridSignal ace_classify(const HyperCube& cube, const std::vector<double>& target,
                        const std::vector<double>& sigma);

/// Remove the first IMF of every frequency channel (channels that produce
/// no IMF pass through unchanged).
HyperCube preprocess_cube(const HyperCube& cube, const MifOptions& options);

/// Remove the first IMF of the score map, then clamp scores back to [0,1].
GridSignal postprocess_map(const GridSignal& map, const MifOptions& options);

} // namespace mif

#endif
