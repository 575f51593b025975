#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mif/decompose.hpp"
#include "mif/detail/numeric.hpp"
#include "mif/errors.hpp"
#include "mif/rng.hpp"
#include "oracles.hpp"

using namespace mif;

namespace {

GridSignal cosine_1d(std::size_t n, double cycles, double amp = 1.0) {
    GridSignal g = make_grid({n});
    for (std::size_t i = 0; i < n; ++i)
        g.values[i] = amp * std::cos(oracles::kTwoPi * cycles * i / static_cast<double>(n));
    return g;
}

} // namespace

TEST_CASE("moving_average: constants are fixed points under both boundaries") {
    Filter1D base = double_average_filter(4);
    FilterKernel k = build_gfp(base, {3, 5});
    GridSignal g = make_grid({16, 20}, 2.5);
    for (Boundary b : {Boundary::symmetric, Boundary::periodic}) {
        for (ConvStrategy s : {ConvStrategy::direct, ConvStrategy::spectral}) {
            GridSignal out = moving_average(g, k, b, s);
            for (double v : out.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));
        }
    }
}

TEST_CASE("moving_average: delta input reproduces the kernel (periodic)") {
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {4});
    GridSignal g = make_grid({32});
    g.values[16] = 1.0;
    GridSignal out = moving_average(g, k, Boundary::periodic, ConvStrategy::direct);
    for (long t = -4; t <= 4; ++t)
        CHECK(out.values[16 + t] == doctest::Approx(k.weights[4 - t]).epsilon(1e-13));
    // kernel symmetric, so orientation is immaterial; all other cells zero
    for (std::size_t i = 0; i < 32; ++i)
        if (i < 12 || i > 20) CHECK(out.values[i] == 0.0);
}

TEST_CASE("moving_average: cosine amplitude scales by the kernel DFT value") {
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {6});
    const std::size_t n = 64;
    for (double cycles : {2.0, 5.0, 11.0}) {
        GridSignal g = cosine_1d(n, cycles);
        double what = oracles::kernel_dft(k, {n}, {static_cast<long>(cycles)});
        GridSignal out = moving_average(g, k, Boundary::periodic);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(out.values[i] == doctest::Approx(what * g.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("fluctuation: definition, constants, cosine complement") {
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {5});
    const std::size_t n = 48;

    GridSignal c = make_grid({n}, 7.0);
    GridSignal fc = fluctuation(c, k, Boundary::periodic);
    for (double v : fc.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(21);
    GridSignal g = oracles::random_grid({n}, rng);
    GridSignal s = fluctuation(g, k, Boundary::symmetric);
    GridSignal l = moving_average(g, k, Boundary::symmetric);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(s.values[i] + l.values[i] == doctest::Approx(g.values[i]).epsilon(1e-13));

    GridSignal cos5 = cosine_1d(n, 5.0);
    double what = oracles::kernel_dft(k, {n}, {5});
    GridSignal f5 = fluctuation(cos5, k, Boundary::periodic);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(f5.values[i] == doctest::Approx((1.0 - what) * cos5.values[i]).epsilon(1e-10));
}

TEST_CASE("direct and spectral paths agree to 1e-10 on random signals") {
    Rng rng(77);
    Filter1D fp = solve_fp_filter(65, 1, 1);
    Filter1D da = double_average_filter(5);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<std::size_t> dims;
        std::vector<std::size_t> radii;
        int nd = 1 + static_cast<int>(rng.integer(3));
        for (int a = 0; a < nd; ++a) {
            dims.push_back(8 + rng.integer(nd == 3 ? 9 : 25));
            radii.push_back(1 + rng.integer(3));
        }
        const Filter1D& base = trial % 2 ? fp : da;
        FilterKernel k = build_gfp(base, radii);
        GridSignal g = oracles::random_grid(dims, rng);
        for (Boundary b : {Boundary::symmetric, Boundary::periodic}) {
            GridSignal d = moving_average(g, k, b, ConvStrategy::direct);
            GridSignal s = moving_average(g, k, b, ConvStrategy::spectral);
            CHECK(oracles::max_abs_diff(d.values, s.values) < 1e-10);
        }
    }
}

TEST_CASE("direct/spectral agreement with kernels wider than the signal (mirror)") {
    Rng rng(31);
    Filter1D da = double_average_filter(4);
    GridSignal g = oracles::random_grid({17, 11}, rng);
    FilterKernel k = build_gfp(da, {25, 40}); // far beyond the mirror period
    GridSignal d = moving_average(g, k, Boundary::symmetric, ConvStrategy::direct);
    GridSignal s = moving_average(g, k, Boundary::symmetric, ConvStrategy::spectral);
    CHECK(oracles::max_abs_diff(d.values, s.values) < 1e-10);
}

TEST_CASE("moving_average: linearity") {
    Rng rng(5);
    Filter1D base = double_average_filter(3);
    FilterKernel k = build_gfp(base, {4, 4});
    GridSignal f = oracles::random_grid({20, 20}, rng);
    GridSignal g = oracles::random_grid({20, 20}, rng);
    GridSignal combo = make_grid({20, 20});
    const double a = 2.25, b = -0.75;
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = a * f.values[i] + b * g.values[i];
    GridSignal lc = moving_average(combo, k, Boundary::symmetric);
    GridSignal lf = moving_average(f, k, Boundary::symmetric);
    GridSignal lg = moving_average(g, k, Boundary::symmetric);
    double scale = detail::max_abs(lc.values);
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        CHECK(std::fabs(lc.values[i] - (a * lf.values[i] + b * lg.values[i])) <=
              1e-12 * std::max(1.0, scale));
}

TEST_CASE("moving_average: cyclic translation equivariance (periodic)") {
    Rng rng(6);
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {3, 3});
    GridSignal g = oracles::random_grid({12, 14}, rng);
    GridSignal shifted = make_grid({12, 14});
    const std::size_t si = 5, sj = 9;
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 14; ++j)
            shifted.values[((i + si) % 12) * 14 + (j + sj) % 14] = g.values[i * 14 + j];
    GridSignal a = moving_average(shifted, k, Boundary::periodic);
    GridSignal b = moving_average(g, k, Boundary::periodic);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 14; ++j)
            CHECK(a.values[((i + si) % 12) * 14 + (j + sj) % 14] ==
                  doctest::Approx(b.values[i * 14 + j]).epsilon(1e-12));
}

TEST_CASE("moving_average errors: dimension mismatch, oversize periodic kernel") {
    Filter1D base = double_average_filter(2);
    FilterKernel k2 = build_gfp(base, {3, 3});
    GridSignal g1 = make_grid({32});
    CHECK_THROWS_AS(moving_average(g1, k2, Boundary::periodic), ValidationError);
    FilterKernel kbig = build_gfp(base, {20});
    CHECK_THROWS_AS(moving_average(g1, kbig, Boundary::periodic), ValidationError);
    CHECK_NOTHROW(moving_average(g1, kbig, Boundary::symmetric));
}

TEST_CASE("sift: zero signal returns a zero IMF after one iteration") {
    Filter1D base = double_average_filter(3);
    FilterKernel k = build_gfp(base, {3});
    GridSignal z = make_grid({32});
    SiftResult r = sift(z, k, {}, Boundary::symmetric);
    CHECK(r.iters == 1);
    CHECK(r.final_delta == 0.0);
    for (double v : r.imf.values) CHECK(v == 0.0);
}

TEST_CASE("sift: single-mode iterates contract by exactly 1 - what(xi)") {
    const std::size_t n = 64;
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {5});
    GridSignal g = cosine_1d(n, 6.0);
    double what = oracles::kernel_dft(k, {n}, {6});
    // one sift step with a huge threshold returns f2 = (1 - what) f1
    StopCriteria one;
    one.inner_delta = 0.999;
    one.max_inner_iters = 1;
    SiftResult r = sift(g, k, one, Boundary::periodic);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(r.imf.values[i] == doctest::Approx((1.0 - what) * g.values[i]).epsilon(1e-9));
    // and the reported delta equals what
    CHECK(r.final_delta == doctest::Approx(std::fabs(what)).epsilon(1e-9));
}

TEST_CASE("sift: two-mode 1D signal converges to the high mode") {
    // Double-average kernel whose window nulls the high tone exactly: the
    // radius-r triangle is box_r * box_r, with DFT zeros at wavelengths r/m.
    const std::size_t n = 128;
    const double hi_cycles = 16.0; // wavelength 8
    const double lo_cycles = 2.0;
    FilterKernel k = build_gfp(double_average_filter(8), {8});
    double w_hi = oracles::kernel_dft(k, {n}, {16});
    double w_lo = oracles::kernel_dft(k, {n}, {2});
    REQUIRE(std::fabs(w_hi) < 1e-12); // exact spectral null
    REQUIRE(w_lo > 0.5);

    GridSignal g = make_grid({n});
    for (std::size_t i = 0; i < n; ++i)
        g.values[i] = std::cos(oracles::kTwoPi * hi_cycles * i / n) +
                      std::cos(oracles::kTwoPi * lo_cycles * i / n);
    StopCriteria stop;
    stop.inner_delta = 1e-3;
    SiftResult r = sift(g, k, stop, Boundary::periodic);
    // prediction by per-mode recursion through the DFT oracle
    double hi_amp = std::pow(1.0 - w_hi, static_cast<double>(r.iters));
    double lo_amp = std::pow(1.0 - w_lo, static_cast<double>(r.iters));
    GridSignal expect = make_grid({n});
    for (std::size_t i = 0; i < n; ++i)
        expect.values[i] = hi_amp * std::cos(oracles::kTwoPi * hi_cycles * i / n) +
                           lo_amp * std::cos(oracles::kTwoPi * lo_cycles * i / n);
    CHECK(oracles::max_abs_diff(r.imf.values, expect.values) < 1e-8);
    CHECK(lo_amp < 1e-3); // the slow mode is gone
    CHECK(hi_amp > 0.999); // the fast mode survived intact
}

TEST_CASE("mif: constant signal yields no IMFs and the input as remainder") {
    GridSignal g = make_grid({64, 64}, 4.0);
    Decomposition dec = mif(g);
    CHECK(dec.imfs.empty());
    CHECK(dec.remainder.values == g.values);
}

TEST_CASE("mif: single low-frequency cosine sheet is captured by the first IMF") {
    const std::size_t n = 128;
    GridSignal g = make_grid({n, n});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.values[i * n + j] = std::cos(oracles::kTwoPi * 4.0 * i / n) *
                                  std::cos(oracles::kTwoPi * 4.0 * j / n);
    Decomposition dec = mif(g);
    REQUIRE(!dec.imfs.empty());
    CHECK(oracles::rel_l2(oracles::interior(dec.imfs[0]), oracles::interior(g)) < 0.05);
    CHECK(detail::max_abs(dec.remainder.values) < 1e-3 * detail::max_abs(g.values));
    GridSignal recon = reconstruct(dec);
    CHECK(oracles::max_abs_diff(recon.values, g.values) <=
          1e-10 * detail::max_abs(g.values));
}

TEST_CASE("reconstruct: empty IMF list returns the remainder; order immaterial") {
    Rng rng(17);
    GridSignal g = oracles::random_grid({24, 24}, rng);
    Decomposition dec = mif(g);
    GridSignal r1 = reconstruct(dec);
    std::reverse(dec.imfs.begin(), dec.imfs.end());
    GridSignal r2 = reconstruct(dec);
    CHECK(oracles::max_abs_diff(r1.values, r2.values) <=
          1e-12 * std::max(1.0, detail::max_abs(r1.values)));

    Decomposition only_rem;
    only_rem.remainder = g;
    GridSignal r3 = reconstruct(only_rem);
    CHECK(r3.values == g.values);

    Decomposition bad;
    bad.remainder = g;
    bad.imfs.push_back(make_grid({3, 3}));
    CHECK_THROWS_AS(reconstruct(bad), ValidationError);
}

TEST_CASE("telescoping: reconstruct(mif(f)) == f within 1e-10 relative max-norm") {
    Rng rng(42);
    for (auto dims : std::vector<std::vector<std::size_t>>{{96}, {48, 48}, {16, 16, 16}}) {
        GridSignal g = oracles::random_grid(dims, rng);
        Decomposition dec = mif(g);
        GridSignal recon = reconstruct(dec);
        double scale = detail::max_abs(g.values);
        CHECK(oracles::max_abs_diff(recon.values, g.values) <= 1e-10 * scale);
        for (const auto& rec : dec.records) CHECK(rec.iters >= 1);
    }
}

TEST_CASE("periodic operator spectrum matches the direct DFT oracle") {
    Filter1D base = solve_fp_filter(65, 1, 1);
    FilterKernel k = build_gfp(base, {5});
    const std::size_t n = 32;
    auto spec = periodic_operator_spectrum(k, {n});
    REQUIRE(spec.size() == n / 2 + 1);
    for (std::size_t f = 0; f <= n / 2; ++f) {
        double ref = oracles::kernel_dft(k, {n}, {static_cast<long>(f)});
        CHECK(spec[f] == doctest::Approx(ref).epsilon(1e-12));
    }

    FilterKernel k2 = build_gfp(base, {4, 4});
    auto spec2 = periodic_operator_spectrum(k2, {16, 16});
    double mx = *std::max_element(spec2.begin(), spec2.end());
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-12)); // unit mass -> unit top eigenvalue
}

TEST_CASE("sift honors StopCriteria validation") {
    Filter1D base = double_average_filter(2);
    FilterKernel k = build_gfp(base, {2});
    GridSignal g = make_grid({16}, 1.0);
    StopCriteria bad;
    bad.inner_delta = 1.5;
    CHECK_THROWS_AS(sift(g, k, bad, Boundary::symmetric), ValidationError);
}
