#ifndef MIF_SYNTH_HPP
#define MIF_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mif/grid.hpp"
#include "mif/hyperspectral.hpp"

namespace mif {

/// Mixture of two damped tones travelling along the anti-diagonal
/// direction v = x - y + 1; the slow component carries a small monotone
/// drift so the residual becomes a genuine trend.
struct TwoToneParams {
    double f_high = 16.0;
    double f_low = 3.0;
    double amp_high = 1.0;
    double amp_low = 1.6;
    double damp_high = 0.4;
    double damp_low = 0.25;
    double drift = 0.3;
};

struct SynthPair {
    GridSignal mixture;
    GridSignal component1; // the non-smooth / fast part (IMF1 target)
    GridSignal component2; // the smooth / slow part
};

SynthPair synth_example1(std::size_t size, const TwoToneParams& p = {});

/// Smooth tilted sinusoid plus a chirped triangle wave, both varying along
/// the vertical axis (middle-vertical-section friendly).
struct SmoothRoughParams {
    double f_smooth = 2.0;
    double amp_smooth = 1.4;
    double phase_smooth = 0.7;
    double tilt = 0.8;
    double f_tri0 = 22.0;
    double chirp = 14.0;
    double amp_tri = 1.0;
};

SynthPair synth_example2(std::size_t size, const SmoothRoughParams& p = {});

/// Synthetic hyperspectral scene: smooth clutter background over a fixed
/// mean spectrum, pixel noise, an implanted target block and isolated
/// single-pixel spike artifacts aligned with the target signature.
struct CubeParams {
    std::size_t h = 64, v = 64, d = 16;
    std::size_t block_i = 30, block_j = 30, block_size = 4;
    std::size_t n_spikes = 30;
    double block_strength = 1.8;
    double spike_strength = 1.2;
    double noise = 0.08;
    double clutter = 0.7;
};

struct SynthCube {
    HyperCube cube;
    std::vector<double> signature;
    std::vector<std::pair<std::size_t, std::size_t>> spikes;
    CubeParams params;
};

SynthCube synth_cube(std::uint64_t seed, const CubeParams& p = {});

} // namespace mif

#endif
