#include "mif/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "mif/detail/numeric.hpp"
#include "mif/errors.hpp"

namespace mif {

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

void check_compatible(const GridSignal& signal, const FilterKernel& kernel,
                      Boundary boundary) {
    if (kernel.ndim() != signal.ndim())
        throw ValidationError("moving_average: kernel ndim " +
                              std::to_string(kernel.ndim()) + " != signal ndim " +
                              std::to_string(signal.ndim()));
    if (boundary == Boundary::periodic) {
        for (std::size_t a = 0; a < signal.ndim(); ++a) {
            if (2 * kernel.radii[a] + 1 > signal.dims[a])
                throw ValidationError(
                    "moving_average: kernel wider than signal on axis " + std::to_string(a) +
                    " under periodic boundary");
        }
    }
}

// Mirror (whole-sample) index extension; periodic with period 2n-2.
inline std::size_t reflect_index(long i, std::size_t n) {
    if (n == 1) return 0;
    long period = 2 * static_cast<long>(n) - 2;
    long m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<long>(n)) m = period - m;
    return static_cast<std::size_t>(m);
}

inline std::size_t wrap_index(long i, std::size_t n) {
    long m = i % static_cast<long>(n);
    if (m < 0) m += static_cast<long>(n);
    return static_cast<std::size_t>(m);
}

// ---------------------------------------------------------------- direct --

GridSignal convolve_direct(const GridSignal& signal, const FilterKernel& kernel,
                           Boundary boundary) {
    const std::size_t ndim = signal.ndim();
    // Per-axis map from (output index, tap) to source index.
    std::vector<std::vector<std::size_t>> index_map(ndim);
    for (std::size_t a = 0; a < ndim; ++a) {
        const std::size_t n = signal.dims[a];
        const long r = static_cast<long>(kernel.radii[a]);
        index_map[a].resize(n * (2 * kernel.radii[a] + 1));
        for (std::size_t x = 0; x < n; ++x) {
            for (long t = -r; t <= r; ++t) {
                std::size_t src = boundary == Boundary::periodic
                                      ? wrap_index(static_cast<long>(x) + t, n)
                                      : reflect_index(static_cast<long>(x) + t, n);
                index_map[a][x * (2 * kernel.radii[a] + 1) +
                             static_cast<std::size_t>(t + r)] = src;
            }
        }
    }

    std::vector<std::size_t> sig_stride(ndim, 1);
    for (std::size_t a = ndim - 1; a-- > 0;)
        sig_stride[a] = sig_stride[a + 1] * signal.dims[a + 1];
    const auto kshape = kernel.shape();
    std::vector<std::size_t> ker_stride(ndim, 1);
    for (std::size_t a = ndim - 1; a-- > 0;) ker_stride[a] = ker_stride[a + 1] * kshape[a + 1];

    GridSignal out;
    out.dims = signal.dims;
    out.values.assign(signal.size(), 0.0);

    const std::size_t rows = signal.size() / signal.dims[ndim - 1];
    const std::size_t row_len = signal.dims[ndim - 1];

    detail::parallel_for(rows, [&](std::size_t row_lo, std::size_t row_hi) {
        std::vector<std::size_t> x(ndim, 0);
        std::vector<std::size_t> t(ndim, 0);
        for (std::size_t row = row_lo; row < row_hi; ++row) {
            std::size_t rem = row;
            for (std::size_t a = ndim - 1; a-- > 0;) {
                x[a] = rem % signal.dims[a];
                rem /= signal.dims[a];
            }
            for (std::size_t xl = 0; xl < row_len; ++xl) {
                x[ndim - 1] = xl;
                double acc = 0.0;
                std::fill(t.begin(), t.end(), 0);
                // odometer over kernel cells; partial source offset per axis
                for (std::size_t cell = 0; cell < kernel.weights.size(); ++cell) {
                    double w = kernel.weights[cell];
                    if (w != 0.0) {
                        std::size_t src = 0;
                        for (std::size_t a = 0; a < ndim; ++a)
                            src += index_map[a][x[a] * kshape[a] + t[a]] * sig_stride[a];
                        acc += signal.values[src] * w;
                    }
                    for (std::size_t a = ndim; a-- > 0;) {
                        if (++t[a] < kshape[a]) break;
                        t[a] = 0;
                    }
                }
                out.values[row * row_len + xl] = acc;
            }
        }
    });
    return out;
}

// -------------------------------------------------------------- spectral --

class SpectralConvolver {
public:
    SpectralConvolver(const std::vector<std::size_t>& dims, const FilterKernel& kernel,
                      Boundary boundary)
        : dims_(dims), boundary_(boundary) {
        const std::size_t ndim = dims.size();
        period_.resize(ndim);
        for (std::size_t a = 0; a < ndim; ++a) {
            period_[a] = boundary == Boundary::periodic
                             ? dims[a]
                             : std::max<std::size_t>(1, 2 * dims[a] - 2);
        }
        vol_ = 1;
        for (std::size_t p : period_) vol_ *= p;
        nc_ = vol_ / period_[ndim - 1] * (period_[ndim - 1] / 2 + 1);

        real_.assign(vol_, 0.0);
        spec_.resize(nc_);
        khat_.resize(nc_);

        std::vector<int> n(ndim);
        for (std::size_t a = 0; a < ndim; ++a) n[a] = static_cast<int>(period_[a]);
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fwd_ = fftw_plan_dft_r2c(static_cast<int>(ndim), n.data(), real_.data(),
                                     spec_.data(), FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_c2r(static_cast<int>(ndim), n.data(), spec_.data(),
                                     real_.data(), FFTW_ESTIMATE);
        }

        // Fold the kernel into the period and transform once; conjugate and
        // pre-scale so apply() is a plain complex multiply.
        std::fill(real_.begin(), real_.end(), 0.0);
        const auto kshape = kernel.shape();
        std::vector<long> t(ndim);
        for (std::size_t a = 0; a < ndim; ++a) t[a] = -static_cast<long>(kernel.radii[a]);
        for (std::size_t cell = 0; cell < kernel.weights.size(); ++cell) {
            std::size_t off = 0;
            for (std::size_t a = 0; a < ndim; ++a)
                off = off * period_[a] + wrap_index(t[a], period_[a]);
            real_[off] += kernel.weights[cell];
            for (std::size_t a = ndim; a-- > 0;) {
                if (t[a] < static_cast<long>(kernel.radii[a])) {
                    ++t[a];
                    break;
                }
                t[a] = -static_cast<long>(kernel.radii[a]);
            }
        }
        fftw_execute(fwd_);
        const double scale = 1.0 / static_cast<double>(vol_);
        for (std::size_t i = 0; i < nc_; ++i) {
            khat_[i][0] = spec_[i][0] * scale;
            khat_[i][1] = -spec_[i][1] * scale;
        }
    }

    ~SpectralConvolver() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }

    SpectralConvolver(const SpectralConvolver&) = delete;
    SpectralConvolver& operator=(const SpectralConvolver&) = delete;

    void apply(const std::vector<double>& in, std::vector<double>& out) {
        extend(in);
        fftw_execute(fwd_);
        for (std::size_t i = 0; i < nc_; ++i) {
            double re = spec_[i][0] * khat_[i][0] - spec_[i][1] * khat_[i][1];
            double im = spec_[i][0] * khat_[i][1] + spec_[i][1] * khat_[i][0];
            spec_[i][0] = re;
            spec_[i][1] = im;
        }
        fftw_execute(bwd_);
        crop(out);
    }

    // Eigenvalues of the periodic operator: real parts of the kernel DFT.
    std::vector<double> spectrum() const {
        std::vector<double> eig(nc_);
        const double unscale = static_cast<double>(vol_);
        for (std::size_t i = 0; i < nc_; ++i) eig[i] = khat_[i][0] * unscale;
        return eig;
    }

private:
    void extend(const std::vector<double>& in) {
        const std::size_t ndim = dims_.size();
        std::vector<std::size_t> p(ndim, 0);
        for (std::size_t off = 0; off < vol_; ++off) {
            std::size_t src = 0;
            for (std::size_t a = 0; a < ndim; ++a) {
                std::size_t pa = p[a];
                std::size_t sa = pa < dims_[a] ? pa : 2 * dims_[a] - 2 - pa;
                src = src * dims_[a] + sa;
            }
            real_[off] = in[src];
            for (std::size_t a = ndim; a-- > 0;) {
                if (++p[a] < period_[a]) break;
                p[a] = 0;
            }
        }
    }

    void crop(std::vector<double>& out) {
        const std::size_t ndim = dims_.size();
        std::size_t n = 1;
        for (std::size_t d : dims_) n *= d;
        out.resize(n);
        std::vector<std::size_t> x(ndim, 0);
        for (std::size_t off = 0; off < n; ++off) {
            std::size_t src = 0;
            for (std::size_t a = 0; a < ndim; ++a) src = src * period_[a] + x[a];
            out[off] = real_[src];
            for (std::size_t a = ndim; a-- > 0;) {
                if (++x[a] < dims_[a]) break;
                x[a] = 0;
            }
        }
    }

    std::vector<std::size_t> dims_;
    std::vector<std::size_t> period_;
    Boundary boundary_;
    std::size_t vol_ = 0, nc_ = 0;
    std::vector<double> real_;
    std::vector<fftw_complex> spec_, khat_;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

constexpr std::size_t kDirectWorkLimit = std::size_t(1) << 24;

bool pick_direct(const GridSignal& signal, const FilterKernel& kernel) {
    // Work estimate: output cells x kernel cells.
    std::size_t work_cells = kernel.cell_count();
    if (work_cells > kDirectWorkLimit / std::max<std::size_t>(1, signal.size()))
        return false;
    return signal.size() * work_cells <= kDirectWorkLimit;
}

} // namespace

GridSignal moving_average(const GridSignal& signal, const FilterKernel& kernel,
                          Boundary boundary, ConvStrategy strategy) {
    validate_grid(signal);
    check_compatible(signal, kernel, boundary);
    bool direct = strategy == ConvStrategy::direct ||
                  (strategy == ConvStrategy::automatic && pick_direct(signal, kernel));
    if (direct) return convolve_direct(signal, kernel, boundary);
    SpectralConvolver conv(signal.dims, kernel, boundary);
    GridSignal out;
    out.dims = signal.dims;
    conv.apply(signal.values, out.values);
    return out;
}

GridSignal fluctuation(const GridSignal& signal, const FilterKernel& kernel,
                       Boundary boundary, ConvStrategy strategy) {
    GridSignal avg = moving_average(signal, kernel, boundary, strategy);
    for (std::size_t i = 0; i < avg.values.size(); ++i)
        avg.values[i] = signal.values[i] - avg.values[i];
    return avg;
}

SiftResult sift(const GridSignal& signal, const FilterKernel& kernel,
                const StopCriteria& stop, Boundary boundary) {
    validate_grid(signal);
    check_compatible(signal, kernel, boundary);
    if (!(stop.inner_delta > 0.0 && stop.inner_delta < 1.0))
        throw ValidationError("sift: inner_delta must lie in (0,1)");
    if (stop.max_inner_iters < 1) throw ValidationError("sift: max_inner_iters must be >= 1");

    const bool direct = pick_direct(signal, kernel);
    std::unique_ptr<SpectralConvolver> conv;
    if (!direct) conv = std::make_unique<SpectralConvolver>(signal.dims, kernel, boundary);

    GridSignal f = signal;
    std::vector<double> avg;
    double delta = 0.0;
    for (std::size_t n = 1;; ++n) {
        double norm = detail::l2_norm(f.values);
        if (norm == 0.0) return {std::move(f), n, 0.0};
        if (direct) {
            avg = convolve_direct(f, kernel, boundary).values;
        } else {
            conv->apply(f.values, avg);
        }
        delta = detail::l2_norm(avg) / norm;
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] -= avg[i];
        if (delta < stop.inner_delta || n >= stop.max_inner_iters)
            return {std::move(f), n, delta};
    }
}

Filter1D make_base_filter(const FilterSpec& spec) {
    if (spec.kind == FilterSpec::Kind::double_average)
        return double_average_filter(spec.half_width);
    return solve_fp_filter(spec.grid_points, spec.alpha, spec.beta);
}

Decomposition mif(const GridSignal& signal, const MifOptions& options) {
    return mif(signal, make_base_filter(options.filter), options);
}

Decomposition mif(const GridSignal& signal, const Filter1D& base,
                  const MifOptions& options) {
    validate_grid(signal);
    if (options.stop.max_imfs < 1) throw ValidationError("mif: max_imfs must be >= 1");

    Decomposition dec;
    GridSignal residual = signal;
    const double input_scale = detail::max_abs(signal.values);

    while (dec.imfs.size() < options.stop.max_imfs) {
        ExtremaStats stats = extrema_stats(residual);
        if (stats.total_mean < options.stop.outer_extrema_threshold) break;
        if (detail::max_abs(residual.values) < 1e-14 * input_scale) break;

        std::vector<std::size_t> radii;
        try {
            radii = estimate_support_radii(residual, options.xi, options.spherical);
        } catch (const TrendSignalError&) {
            break;
        }
        FilterKernel kernel = build_gfp(base, radii);
        SiftResult s = sift(residual, kernel, options.stop, options.boundary);
        for (std::size_t i = 0; i < residual.values.size(); ++i)
            residual.values[i] -= s.imf.values[i];
        dec.records.push_back({radii, s.iters, s.final_delta});
        dec.imfs.push_back(std::move(s.imf));
    }
    dec.remainder = std::move(residual);
    return dec;
}

GridSignal reconstruct(const Decomposition& dec) {
    const GridSignal* ref = dec.imfs.empty() ? &dec.remainder : &dec.imfs.front();
    if (ref->dims.empty()) throw ValidationError("reconstruct: empty decomposition");
    GridSignal out = make_grid(ref->dims, 0.0);
    for (const GridSignal& imf : dec.imfs) {
        if (imf.dims != out.dims)
            throw ValidationError("reconstruct: component dimension mismatch");
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += imf.values[i];
    }
    if (dec.remainder.dims != out.dims)
        throw ValidationError("reconstruct: remainder dimension mismatch");
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += dec.remainder.values[i];
    return out;
}

std::vector<double> periodic_operator_spectrum(const FilterKernel& kernel,
                                               const std::vector<std::size_t>& dims) {
    if (dims.size() != kernel.ndim())
        throw ValidationError("periodic_operator_spectrum: dims/kernel ndim mismatch");
    SpectralConvolver conv(dims, kernel, Boundary::periodic);
    return conv.spectrum();
}

} // namespace mif
