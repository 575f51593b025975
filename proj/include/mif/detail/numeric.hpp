#ifndef MIF_DETAIL_NUMERIC_HPP
#define MIF_DETAIL_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mif::detail {

// Kahan-compensated sum; keeps big normalization sums exact to ~1 ulp.
inline double ksum(const double* data, std::size_t n, std::size_t stride = 1) {
    double sum = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double y = data[i * stride] - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

inline double ksum(const std::vector<double>& v) { return ksum(v.data(), v.size()); }

inline double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Thread budget: min(hardware, MIF_THREADS when set), at least 1.
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MIF_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && static_cast<unsigned long>(v) < hw)
            hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Static block partition over [0, n); disjoint writes keep results
// independent of the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n < 2) {
        body(0, n);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
}

} // namespace mif::detail

#endif
