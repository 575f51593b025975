#include "mif/synth.hpp"

#include <cmath>

#include "mif/errors.hpp"
#include "mif/rng.hpp"

namespace mif {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Unit triangle wave with period 1, values in [-1,1], kinks at half-periods.
double tri_wave(double phase) {
    double t = phase - std::floor(phase);
    return 4.0 * std::fabs(t - 0.5) - 1.0;
}

} // namespace

SynthPair synth_example1(std::size_t size, const TwoToneParams& p) {
    if (size < 64) throw ValidationError("synth example1: size must be >= 64");
    SynthPair out;
    out.component1 = make_grid({size, size});
    out.component2 = make_grid({size, size});
    out.mixture = make_grid({size, size});
    const double inv = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) {
        double x = static_cast<double>(i) * inv;
        for (std::size_t j = 0; j < size; ++j) {
            double y = static_cast<double>(j) * inv;
            double v = x - y + 1.0; // anti-diagonal travelling coordinate
            double c1 = p.amp_high * std::exp(-p.damp_high * v) *
                        std::sin(kTwoPi * p.f_high * v);
            double c2 = p.amp_low * std::exp(-p.damp_low * v) *
                        (std::sin(kTwoPi * p.f_low * v) + p.drift);
            std::size_t off = i * size + j;
            out.component1.values[off] = c1;
            out.component2.values[off] = c2;
            out.mixture.values[off] = c1 + c2;
        }
    }
    return out;
}

SynthPair synth_example2(std::size_t size, const SmoothRoughParams& p) {
    if (size < 64) throw ValidationError("synth example2: size must be >= 64");
    SynthPair out;
    out.component1 = make_grid({size, size});
    out.component2 = make_grid({size, size});
    out.mixture = make_grid({size, size});
    const double inv = 1.0 / static_cast<double>(size);
    for (std::size_t j = 0; j < size; ++j) {
        double y = static_cast<double>(j) * inv;
        double smooth = p.amp_smooth * std::sin(kTwoPi * p.f_smooth * y + p.phase_smooth) +
                        p.tilt * (y - 0.5);
        double rough = p.amp_tri * tri_wave(p.f_tri0 * y + 0.5 * p.chirp * y * y);
        for (std::size_t i = 0; i < size; ++i) {
            std::size_t off = i * size + j;
            out.component1.values[off] = rough;
            out.component2.values[off] = smooth;
            out.mixture.values[off] = rough + smooth;
        }
    }
    return out;
}

SynthCube synth_cube(std::uint64_t seed, const CubeParams& p) {
    if (p.d < 2) throw ValidationError("synth cube: need at least 2 channels");
    if (p.block_i + p.block_size > p.h || p.block_j + p.block_size > p.v)
        throw ValidationError("synth cube: target block out of bounds");

    SynthCube out;
    out.params = p;
    out.cube = make_cube(p.h, p.v, p.d);

    // Fixed mean spectrum; target signature orthogonal to it so the ACE
    // numerator reflects implants, not the scene mean.
    std::vector<double> mean_spec(p.d), target(p.d);
    for (std::size_t c = 0; c < p.d; ++c) {
        double ci = static_cast<double>(c);
        mean_spec[c] = 1.0 + 0.35 * std::sin(kTwoPi * ci / static_cast<double>(p.d)) +
                       0.002 * ci;
        double z = (ci - 11.0) / 2.0;
        target[c] = std::exp(-0.5 * z * z);
    }
    double mt = 0.0, mm = 0.0;
    for (std::size_t c = 0; c < p.d; ++c) {
        mt += target[c] * mean_spec[c];
        mm += mean_spec[c] * mean_spec[c];
    }
    for (std::size_t c = 0; c < p.d; ++c) target[c] -= mt / mm * mean_spec[c];
    double tn = 0.0;
    for (double x : target) tn += x * x;
    tn = std::sqrt(tn);
    for (double& x : target) x /= tn;
    out.signature = target;

    Rng rng(seed);
    const double invh = 1.0 / static_cast<double>(p.h);
    const double invv = 1.0 / static_cast<double>(p.v);
    for (std::size_t i = 0; i < p.h; ++i) {
        double x = static_cast<double>(i) * invh;
        for (std::size_t j = 0; j < p.v; ++j) {
            double y = static_cast<double>(j) * invv;
            double clutter = p.clutter * (std::sin(kTwoPi * (1.3 * x + 0.9 * y)) +
                                          0.6 * std::cos(kTwoPi * 2.1 * y));
            double* s = out.cube.signature(i, j);
            for (std::size_t c = 0; c < p.d; ++c)
                s[c] = mean_spec[c] * (1.0 + clutter) + p.noise * rng.gauss();
        }
    }

    for (std::size_t i = p.block_i; i < p.block_i + p.block_size; ++i)
        for (std::size_t j = p.block_j; j < p.block_j + p.block_size; ++j) {
            double* s = out.cube.signature(i, j);
            for (std::size_t c = 0; c < p.d; ++c) s[c] += p.block_strength * target[c];
        }

    // Isolated spike artifacts: pairwise Chebyshev distance >= 3, clear of
    // the block margin and the image border.
    while (out.spikes.size() < p.n_spikes) {
        std::size_t i = 2 + rng.integer(p.h - 4);
        std::size_t j = 2 + rng.integer(p.v - 4);
        bool near_block = i + 2 >= p.block_i && i < p.block_i + p.block_size + 2 &&
                          j + 2 >= p.block_j && j < p.block_j + p.block_size + 2;
        if (near_block) continue;
        bool near_spike = false;
        for (auto [a, b] : out.spikes) {
            std::size_t di = a > i ? a - i : i - a;
            std::size_t dj = b > j ? b - j : j - b;
            if (di <= 2 && dj <= 2) {
                near_spike = true;
                break;
            }
        }
        if (near_spike) continue;
        out.spikes.emplace_back(i, j);
        double* s = out.cube.signature(i, j);
        for (std::size_t c = 0; c < p.d; ++c) s[c] += p.spike_strength * target[c];
    }
    return out;
}

} // namespace mif
