#ifndef MIF_RNG_HPP
#define MIF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mif {

/// mt19937_64 with explicit value mappings so streams are identical across
/// standard libraries (std::*_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Modulo mapping; bound << 2^64 here.
    std::uint64_t integer(std::uint64_t bound) { return eng_() % bound; }

    /// Standard normal via Box-Muller, pair-cached.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace mif

#endif
