#include "mif/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "mif/detail/numeric.hpp"
#include "mif/errors.hpp"

namespace mif {

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Linear interpolation of a profile sampled uniformly on [-1,1] at x.
double interp_profile(const std::vector<double>& samples, double x) {
    const std::size_t n = samples.size();
    double pos = (x + 1.0) * 0.5 * static_cast<double>(n - 1);
    if (pos <= 0.0) return samples.front();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= n - 1) return samples.back();
    double f = pos - static_cast<double>(i);
    return samples[i] * (1.0 - f) + samples[i + 1] * f;
}

// Clamp round-off negatives, enforce exact symmetry and zero endpoints,
// then scale to unit trapezoidal mass.
void finalize_profile(std::vector<double>& p) {
    const std::size_t n = p.size();
    for (double& v : p)
        if (v < 0.0) v = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        double m = 0.5 * (p[i] + p[n - 1 - i]);
        p[i] = m;
        p[n - 1 - i] = m;
    }
    p.front() = 0.0;
    p.back() = 0.0;
    double dx = 2.0 / static_cast<double>(n - 1);
    double mass = detail::ksum(p) * dx; // endpoints are zero, trapezoid == plain sum
    if (!(mass > 0.0)) throw NumericError("filter profile collapsed to zero mass");
    for (double& v : p) v /= mass;
}

// Axis profile of the planar autocorrelation of the radial lift of `profile`.
// Input has n samples on [-1,1]; output has 2n-1 samples on [-1,1] (support
// rescaled by 1/2). Computed with one real 2D FFT pair on a (2n)^2 grid.
std::vector<double> planar_autocorr_profile(const std::vector<double>& profile) {
    const std::size_t n = profile.size();
    const std::size_t m = 2 * n;
    const std::size_t mc = m / 2 + 1;
    const double h = 2.0 / static_cast<double>(n - 1);

    std::vector<double> real(m * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double x = -1.0 + static_cast<double>(i) * h;
        for (std::size_t j = 0; j < n; ++j) {
            double y = -1.0 + static_cast<double>(j) * h;
            double rho2 = x * x + y * y;
            if (rho2 <= 1.0) real[i * m + j] = interp_profile(profile, std::sqrt(rho2));
        }
    }

    std::vector<fftw_complex> spec(m * mc);
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fwd = fftw_plan_dft_r2c_2d(static_cast<int>(m), static_cast<int>(m), real.data(),
                                   spec.data(), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(static_cast<int>(m), static_cast<int>(m), spec.data(),
                                   real.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
    for (auto& c : spec) {
        c[0] = (c[0] * c[0] + c[1] * c[1]) * scale;
        c[1] = 0.0;
    }
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    // Circular autocorrelation; shifts 0..n-1 along +x are rows 0..n-1.
    std::vector<double> out(2 * n - 1);
    for (std::size_t s = 0; s < n; ++s) {
        double v = real[s * m];
        out[(n - 1) + s] = v;
        out[(n - 1) - s] = v;
    }
    finalize_profile(out);
    return out;
}

} // namespace

namespace detail {

double fp_cfl_step(std::size_t n, double alpha, double beta) {
    double dx = 2.0 / static_cast<double>(n - 1);
    return 0.35 * std::min(dx * dx / beta, dx / alpha);
}

// Flux form dt p = -d/dx(alpha*h*p) + d/dx(beta*g^2*dp/dx) with h = -x and
// g = 1 - x^2: donor-cell advection, centered diffusion, zero boundary cells.
double fp_time_step(std::vector<double>& p, double alpha, double beta, double dt) {
    const std::size_t n = p.size();
    const double dx = 2.0 / static_cast<double>(n - 1);
    static thread_local std::vector<double> flux;
    flux.assign(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double xf = -1.0 + (static_cast<double>(i) + 0.5) * dx;
        double hdrift = -xf;
        double g2 = (1.0 - xf * xf) * (1.0 - xf * xf);
        double adv = hdrift > 0.0 ? hdrift * p[i] : hdrift * p[i + 1];
        flux[i] = alpha * adv - beta * g2 * (p[i + 1] - p[i]) / dx;
    }
    double change = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double next = p[i] - dt / dx * (flux[i] - flux[i - 1]);
        change += std::fabs(next - p[i]);
        p[i] = next;
    }
    return change;
}

std::vector<double> fp_steady_state(std::size_t n, double alpha, double beta) {
    const double dx = 2.0 / static_cast<double>(n - 1);
    std::vector<double> p(n, 0.0);
    const std::size_t c = n / 2;
    p[c] = 1.0;
    // Zero-flux balance across each face fixes the ratio of neighbours.
    for (std::size_t i = c; i + 2 < n; ++i) {
        double xf = -1.0 + (static_cast<double>(i) + 0.5) * dx;
        double hdrift = -xf;
        double hp = std::max(hdrift, 0.0), hn = std::min(hdrift, 0.0);
        double g2 = (1.0 - xf * xf) * (1.0 - xf * xf);
        double denom = beta * g2 / dx - alpha * hn;
        p[i + 1] = p[i] * (alpha * hp + beta * g2 / dx) / denom;
    }
    p[n - 1] = 0.0;
    for (std::size_t i = 0; i < c; ++i) p[i] = p[n - 1 - i];
    return p;
}

} // namespace detail

Filter1D solve_fp_filter(std::size_t grid_points, double drift_weight,
                         double diffusion_weight) {
    if (grid_points < 33 || grid_points % 2 == 0)
        throw ValidationError("solve_fp_filter: grid_points must be odd and >= 33");
    if (!(drift_weight > 0.0) || !(diffusion_weight > 0.0))
        throw ValidationError("solve_fp_filter: alpha and beta must be positive");

    std::vector<double> p =
        detail::fp_steady_state(grid_points, drift_weight, diffusion_weight);

    // Run the explicit stepping from the algebraic steady state until the
    // relative L1 change per unit time drops below 1e-12 (normally the very
    // first step).
    const double dt = detail::fp_cfl_step(grid_points, drift_weight, diffusion_weight);
    const std::size_t cap = 100000;
    double rel = 0.0;
    bool converged = false;
    for (std::size_t step = 0; step < cap; ++step) {
        double total = detail::ksum(p);
        double change = detail::fp_time_step(p, drift_weight, diffusion_weight, dt);
        rel = change / std::max(total, 1e-300) / dt;
        if (!std::isfinite(rel))
            throw NumericError("solve_fp_filter: stepping diverged, residual=" +
                               std::to_string(rel));
        if (rel < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "solve_fp_filter: no steady state within iteration cap, residual=" << rel;
        throw NumericError(os.str());
    }

    // Two planar autocorrelation passes keep the rotated kernels positive
    // semidefinite in the plane; see the filter spectra tests.
    finalize_profile(p);
    p = planar_autocorr_profile(p);
    p = planar_autocorr_profile(p);

    Filter1D out{std::move(p)};
    return out;
}

Filter1D double_average_filter(std::size_t half_width_samples) {
    if (half_width_samples < 1)
        throw ValidationError("double_average_filter: half_width must be >= 1");
    const std::size_t m = half_width_samples;
    std::vector<double> p(2 * m + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double tri = static_cast<double>(m) -
                     std::fabs(static_cast<double>(i) - static_cast<double>(m));
        p[i] = tri;
    }
    finalize_profile(p);
    return Filter1D{std::move(p)};
}

std::vector<std::size_t> FilterKernel::shape() const {
    std::vector<std::size_t> s(radii.size());
    for (std::size_t a = 0; a < radii.size(); ++a) s[a] = 2 * radii[a] + 1;
    return s;
}

std::size_t FilterKernel::cell_count() const {
    std::size_t n = 1;
    for (std::size_t r : radii) n *= 2 * r + 1;
    return n;
}

GridSignal FilterKernel::as_grid() const {
    GridSignal g;
    g.dims = shape();
    g.values = weights;
    return g;
}

FilterKernel build_gfp(const Filter1D& base, const std::vector<std::size_t>& radii) {
    if (radii.empty()) throw ValidationError("build_gfp: need at least one radius");
    for (std::size_t r : radii)
        if (r == 0) throw ValidationError("build_gfp: degenerate radius 0");

    FilterKernel k;
    k.radii = radii;
    k.weights.assign(k.cell_count(), 0.0);

    const std::size_t ndim = radii.size();
    std::vector<long> t(ndim);
    for (std::size_t a = 0; a < ndim; ++a) t[a] = -static_cast<long>(radii[a]);
    for (std::size_t cell = 0; cell < k.weights.size(); ++cell) {
        double rho2 = 0.0;
        for (std::size_t a = 0; a < ndim; ++a) {
            double q = static_cast<double>(t[a]) / static_cast<double>(radii[a]);
            rho2 += q * q;
        }
        if (rho2 <= 1.0) k.weights[cell] = interp_profile(base.samples, std::sqrt(rho2));
        // odometer, last axis fastest
        for (std::size_t a = ndim; a-- > 0;) {
            if (t[a] < static_cast<long>(radii[a])) {
                ++t[a];
                break;
            }
            t[a] = -static_cast<long>(radii[a]);
        }
    }

    double mass = detail::ksum(k.weights);
    if (!(mass > 0.0)) throw NumericError("build_gfp: kernel has zero mass");
    for (double& w : k.weights) w /= mass;
    return k;
}

std::vector<std::size_t> estimate_support_radii(const GridSignal& signal, double xi,
                                                bool spherical) {
    if (!(xi > 0.0)) throw ValidationError("estimate_support_radii: xi must be positive");
    ExtremaStats stats = extrema_stats(signal);
    const std::size_t k = signal.ndim();
    std::vector<std::size_t> radii(k, 0);
    std::size_t max_active = 0;
    bool any_active = false;
    for (std::size_t a = 0; a < k; ++a) {
        double m = stats.per_axis_mean_count[a];
        if (m > 0.0) {
            any_active = true;
            double raw = xi * static_cast<double>(signal.dims[a]) / m;
            std::size_t r = static_cast<std::size_t>(std::max(1.0, std::floor(raw + 0.5)));
            std::size_t cap = std::max<std::size_t>(1, 2 * signal.dims[a] - 2);
            radii[a] = std::min(r, cap);
            max_active = std::max(max_active, radii[a]);
        }
    }
    if (!any_active) throw TrendSignalError();
    for (std::size_t a = 0; a < k; ++a) {
        if (radii[a] == 0) radii[a] = max_active;
    }
    if (spherical) {
        double mean = 0.0;
        for (std::size_t r : radii) mean += static_cast<double>(r);
        mean /= static_cast<double>(k);
        std::size_t rs = static_cast<std::size_t>(std::max(1.0, std::floor(mean + 0.5)));
        for (std::size_t a = 0; a < k; ++a) {
            std::size_t cap = std::max<std::size_t>(1, 2 * signal.dims[a] - 2);
            radii[a] = std::min(rs, cap);
        }
    }
    return radii;
}

} // namespace mif
