#include "mif/hyperspectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mif/detail/numeric.hpp"
#include "mif/errors.hpp"

namespace mif {

namespace {

constexpr char kMagic[4] = {'M', 'I', 'F', 'H'};
constexpr std::uint8_t kVersion = 0x01;

void put_u32_le(std::ostream& os, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(b, 4);
}

std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_le(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b, 8);
}

double get_f64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

// Lower-triangular Cholesky, in place over a row-major copy.
// Throws NumericError when a pivot is not strictly positive.
std::vector<double> cholesky(const std::vector<double>& sigma, std::size_t d,
                             const char* who) {
    std::vector<double> L(sigma);
    for (std::size_t j = 0; j < d; ++j) {
        double diag = L[j * d + j];
        for (std::size_t k = 0; k < j; ++k) diag -= L[j * d + k] * L[j * d + k];
        if (!(diag > 0.0))
            throw NumericError(std::string(who) +
                               ": covariance not positive-definite (pivot " +
                               std::to_string(j) + ")");
        double root = std::sqrt(diag);
        L[j * d + j] = root;
        for (std::size_t i = j + 1; i < d; ++i) {
            double s = L[i * d + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
            L[i * d + j] = s / root;
        }
        for (std::size_t k = j + 1; k < d; ++k) L[j * d + k] = 0.0;
    }
    return L;
}

// Solve (L L') x = b via forward/back substitution.
void chol_solve(const std::vector<double>& L, std::size_t d, const double* b, double* x) {
    for (std::size_t i = 0; i < d; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L[i * d + k] * x[k];
        x[i] = s / L[i * d + i];
    }
    for (std::size_t i = d; i-- > 0;) {
        double s = x[i];
        for (std::size_t k = i + 1; k < d; ++k) s -= L[k * d + i] * x[k];
        x[i] = s / L[i * d + i];
    }
}

} // namespace

GridSignal HyperCube::channel(std::size_t c) const {
    GridSignal g = make_grid({h, v}, 0.0);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < v; ++j) g.values[i * v + j] = values[(i * v + j) * d + c];
    return g;
}

void HyperCube::set_channel(std::size_t c, const GridSignal& g) {
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < v; ++j) values[(i * v + j) * d + c] = g.values[i * v + j];
}

HyperCube make_cube(std::size_t h, std::size_t v, std::size_t d, double fill) {
    HyperCube c;
    c.h = h;
    c.v = v;
    c.d = d;
    c.values.assign(h * v * d, fill);
    validate_cube(c);
    return c;
}

void validate_cube(const HyperCube& cube) {
    if (cube.h == 0 || cube.v == 0) throw ValidationError("cube: empty spatial plane");
    if (cube.d < 2) throw ValidationError("cube: need at least 2 frequency channels");
    if (cube.values.size() != cube.h * cube.v * cube.d)
        throw ValidationError("cube: value count does not match h*v*d");
    for (std::size_t i = 0; i < cube.values.size(); ++i)
        if (!std::isfinite(cube.values[i]))
            throw ValidationError("cube: non-finite value at index " + std::to_string(i));
}

void save_cube(const HyperCube& cube, const std::string& path) {
    validate_cube(cube);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    os.put(static_cast<char>(kVersion));
    put_u32_le(os, static_cast<std::uint32_t>(cube.h));
    put_u32_le(os, static_cast<std::uint32_t>(cube.v));
    put_u32_le(os, static_cast<std::uint32_t>(cube.d));
    for (double x : cube.values) put_f64_le(os, x);
    if (!os) throw ValidationError("write failure: " + path);
}

HyperCube load_cube(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ValidationError(path + ": bad magic at byte 0 (not a MIFH file)");
    if (is.get() != kVersion) throw ValidationError(path + ": unsupported version at byte 4");
    HyperCube cube;
    cube.h = get_u32_le(is);
    cube.v = get_u32_le(is);
    cube.d = get_u32_le(is);
    if (!is) throw ValidationError(path + ": truncated header");
    if (cube.h == 0 || cube.v == 0 || cube.d == 0)
        throw ValidationError(path + ": zero dimension in header");
    cube.values.resize(cube.h * cube.v * cube.d);
    for (std::size_t i = 0; i < cube.values.size(); ++i) {
        cube.values[i] = get_f64_le(is);
        if (!is)
            throw ValidationError(path + ": truncated payload at byte " +
                                  std::to_string(17 + 8 * i));
    }
    validate_cube(cube);
    return cube;
}

std::vector<double> load_signature(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw ValidationError(path + ": empty signature file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<double> s;
    std::size_t pos = 0, col = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        std::string field = line.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0' || !std::isfinite(v))
            throw ValidationError(path + ": bad signature value at col " + std::to_string(col));
        s.push_back(v);
        ++col;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    double norm = 0.0;
    for (double x : s) norm += x * x;
    if (norm == 0.0) throw ValidationError(path + ": signature is the zero vector");
    return s;
}

void save_signature(const std::vector<double>& s, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os.precision(17);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    os << '\n';
}

std::vector<double> covariance(const HyperCube& cube, double ridge) {
    validate_cube(cube);
    if (ridge < 0.0) throw ValidationError("covariance: ridge must be nonnegative");
    const std::size_t n = cube.pixel_count();
    if (n < 2) throw ValidationError("covariance: need at least 2 pixels");
    const std::size_t d = cube.d;

    std::vector<double> mean(d, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        const double* s = cube.values.data() + p * d;
        for (std::size_t a = 0; a < d; ++a) mean[a] += s[a];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<double> sigma(d * d, 0.0);
    std::vector<double> centered(d);
    for (std::size_t p = 0; p < n; ++p) {
        const double* s = cube.values.data() + p * d;
        for (std::size_t a = 0; a < d; ++a) centered[a] = s[a] - mean[a];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) sigma[a * d + b] += centered[a] * centered[b];
    }
    const double denom = static_cast<double>(n - 1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            double v = sigma[a * d + b] / denom;
            sigma[a * d + b] = v;
            sigma[b * d + a] = v; // exact symmetry by construction
        }

    double trace = 0.0;
    for (std::size_t a = 0; a < d; ++a) trace += sigma[a * d + a];
    if (ridge > 0.0) {
        double bump = ridge * trace / static_cast<double>(d);
        for (std::size_t a = 0; a < d; ++a) sigma[a * d + a] += bump;
    }

    // Fail fast with actionable advice instead of deferring to ace_classify.
    try {
        cholesky(sigma, d, "covariance");
    } catch (const NumericError&) {
        if (ridge == 0.0)
            throw ValidationError(
                "covariance: sample covariance is singular; pass a positive ridge");
        throw;
    }
    return sigma;
}

GridSignal ace_classify(const HyperCube& cube, const std::vector<double>& target,
                        const std::vector<double>& sigma) {
    validate_cube(cube);
    const std::size_t d = cube.d;
    if (target.size() != d)
        throw ValidationError("ace_classify: target length " + std::to_string(target.size()) +
                              " != channel count " + std::to_string(d));
    if (sigma.size() != d * d) throw ValidationError("ace_classify: sigma must be d x d");
    double tnorm = 0.0;
    for (double x : target) tnorm += x * x;
    if (tnorm == 0.0) throw ValidationError("ace_classify: target signature is zero");

    std::vector<double> L = cholesky(sigma, d, "ace_classify");
    std::vector<double> u(d);
    chol_solve(L, d, target.data(), u.data());
    double target_term = 0.0;
    for (std::size_t a = 0; a < d; ++a) target_term += target[a] * u[a];
    if (!(target_term > 0.0))
        throw NumericError("ace_classify: whitened target norm is not positive");

    GridSignal out = make_grid({cube.h, cube.v}, 0.0);
    detail::parallel_for(cube.pixel_count(), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> w(d);
        for (std::size_t p = lo; p < hi; ++p) {
            const double* s = cube.values.data() + p * d;
            chol_solve(L, d, s, w.data());
            double num = 0.0, self = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                num += s[a] * u[a];
                self += s[a] * w[a];
            }
            out.values[p] = self > 0.0 ? (num * num) / (target_term * self) : 0.0;
        }
    });
    return out;
}

HyperCube preprocess_cube(const HyperCube& cube, const MifOptions& options) {
    validate_cube(cube);
    Filter1D base = make_base_filter(options.filter);
    HyperCube out = cube;
    detail::parallel_for(cube.d, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t c = lo; c < hi; ++c) {
            GridSignal ch = cube.channel(c);
            Decomposition dec = mif(ch, base, options);
            if (dec.imfs.empty()) continue;
            for (std::size_t i = 0; i < ch.values.size(); ++i)
                ch.values[i] -= dec.imfs.front().values[i];
            out.set_channel(c, ch);
        }
    });
    return out;
}

GridSignal postprocess_map(const GridSignal& map, const MifOptions& options) {
    validate_grid(map);
    Decomposition dec = mif(map, options);
    GridSignal out = map;
    if (!dec.imfs.empty()) {
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] -= dec.imfs.front().values[i];
    }
    for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
    return out;
}

} // namespace mif
