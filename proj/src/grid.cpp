#include "mif/grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "mif/errors.hpp"

namespace mif {

namespace {

constexpr char kMagic[4] = {'M', 'I', 'F', 'G'};
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

} // namespace

std::size_t GridSignal::offset(const std::vector<std::size_t>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) off = off * dims[a] + idx[a];
    return off;
}

GridSignal make_grid(std::vector<std::size_t> dims, double fill) {
    GridSignal g;
    g.dims = std::move(dims);
    std::size_t n = 1;
    for (std::size_t d : g.dims) n *= d;
    g.values.assign(n, fill);
    validate_grid(g);
    return g;
}

void validate_grid(const GridSignal& g) {
    if (g.dims.empty()) throw ValidationError("grid: ndim must be >= 1");
    std::size_t n = 1;
    for (std::size_t d : g.dims) {
        if (d == 0) throw ValidationError("grid: zero-length axis");
        n *= d;
    }
    if (g.values.size() != n)
        throw ValidationError("grid: value count " + std::to_string(g.values.size()) +
                              " does not match dims product " + std::to_string(n));
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        if (!std::isfinite(g.values[i]))
            throw ValidationError("grid: non-finite value at cell " + std::to_string(i));
    }
}

void save_grid(const GridSignal& g, const std::string& path, GridFormat format) {
    validate_grid(g);
    if (format == GridFormat::csv_2d && g.ndim() != 2)
        throw ValidationError("csv-2d format requires a 2D grid, got ndim=" +
                              std::to_string(g.ndim()));
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    if (format == GridFormat::native_binary) {
        os.write(kMagic, 4);
        os.put(static_cast<char>(kVersion));
        put_u32_le(os, static_cast<std::uint32_t>(g.ndim()));
        for (std::size_t d : g.dims) put_u32_le(os, static_cast<std::uint32_t>(d));
        for (double v : g.values) put_f64_le(os, v);
    } else {
        os.precision(17);
        for (std::size_t i = 0; i < g.dims[0]; ++i) {
            for (std::size_t j = 0; j < g.dims[1]; ++j) {
                if (j) os << ',';
                os << g.values[i * g.dims[1] + j];
            }
            os << '\n';
        }
    }
    if (!os) throw ValidationError("write failure: " + path);
}

namespace {

GridSignal load_native(std::istream& is, const std::string& path) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ValidationError(path + ": bad magic at byte 0 (not a MIFG file)");
    int version = is.get();
    if (version != kVersion)
        throw ValidationError(path + ": unsupported version at byte 4");
    std::uint32_t k = get_u32_le(is);
    if (!is || k == 0 || k > 32)
        throw ValidationError(path + ": invalid ndim at byte 5");
    GridSignal g;
    g.dims.resize(k);
    std::size_t n = 1;
    for (std::uint32_t a = 0; a < k; ++a) {
        std::uint32_t d = get_u32_le(is);
        if (!is || d == 0)
            throw ValidationError(path + ": invalid dim at byte " + std::to_string(9 + 4 * a));
        g.dims[a] = d;
        if (n > std::numeric_limits<std::size_t>::max() / d)
            throw ValidationError(path + ": dims overflow");
        n *= d;
    }
    g.values.resize(n);
    std::size_t payload = 9 + 4 * static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < n; ++i) {
        g.values[i] = get_f64_le(is);
        if (!is)
            throw ValidationError(path + ": truncated payload at byte " +
                                  std::to_string(payload + 8 * i));
        if (!std::isfinite(g.values[i]))
            throw ValidationError(path + ": non-finite value at cell " + std::to_string(i));
    }
    return g;
}

GridSignal load_csv(std::istream& is, const std::string& path) {
    std::vector<double> values;
    std::size_t cols = 0, row = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && is.peek() == std::char_traits<char>::eof()) break;
        std::size_t col = 0, pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            std::string field = line.substr(pos, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - pos);
            char* end = nullptr;
            double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0' || !std::isfinite(v))
                throw ValidationError(path + ": bad value at row " + std::to_string(row) +
                                      ", col " + std::to_string(col));
            values.push_back(v);
            ++col;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (row == 0)
            cols = col;
        else if (col != cols)
            throw ValidationError(path + ": ragged row " + std::to_string(row) + " (" +
                                  std::to_string(col) + " fields, expected " +
                                  std::to_string(cols) + ")");
        ++row;
    }
    if (row == 0 || cols == 0) throw ValidationError(path + ": empty csv grid");
    GridSignal g;
    g.dims = {row, cols};
    g.values = std::move(values);
    return g;
}

} // namespace

GridSignal load_grid(const std::string& path, GridFormat format) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open: " + path);
    GridSignal g = format == GridFormat::native_binary ? load_native(is, path)
                                                       : load_csv(is, path);
    validate_grid(g);
    return g;
}

std::vector<double> slice_1d(const GridSignal& g, std::size_t axis,
                             const std::vector<std::size_t>& fixed) {
    if (axis >= g.ndim())
        throw ValidationError("slice_1d: axis " + std::to_string(axis) + " out of range");
    if (fixed.size() + 1 != g.ndim())
        throw ValidationError("slice_1d: expected " + std::to_string(g.ndim() - 1) +
                              " fixed indices");
    std::vector<std::size_t> idx(g.ndim(), 0);
    std::size_t f = 0;
    for (std::size_t a = 0; a < g.ndim(); ++a) {
        if (a == axis) continue;
        if (fixed[f] >= g.dims[a])
            throw ValidationError("slice_1d: fixed index out of range on axis " +
                                  std::to_string(a));
        idx[a] = fixed[f++];
    }
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < g.ndim(); ++a) stride *= g.dims[a];
    std::size_t start = g.offset(idx);
    std::vector<double> out(g.dims[axis]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.values[start + i * stride];
    return out;
}

std::vector<double> slice_antidiagonal(const GridSignal& g) {
    if (g.ndim() != 2 || g.dims[0] != g.dims[1])
        throw ValidationError("anti-diagonal section requires a square 2D grid");
    std::size_t n = g.dims[0];
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = g.values[i * n + (n - 1 - i)];
    return out;
}

std::size_t count_extrema(const double* data, std::size_t n, std::size_t stride) {
    if (n < 3) return 0;
    // Direction reversals of the plateau-collapsed series.
    std::size_t count = 0;
    double prev = data[0];
    int dir_prev = 0;
    for (std::size_t i = 1; i < n; ++i) {
        double v = data[i * stride];
        if (v == prev) continue;
        int dir = v > prev ? 1 : -1;
        if (dir_prev != 0 && dir != dir_prev) ++count;
        dir_prev = dir;
        prev = v;
    }
    return count;
}

std::size_t count_extrema(const std::vector<double>& series) {
    return count_extrema(series.data(), series.size());
}

ExtremaStats extrema_stats(const GridSignal& g) {
    validate_grid(g);
    ExtremaStats stats;
    stats.per_axis_mean_count.resize(g.ndim());
    for (std::size_t axis = 0; axis < g.ndim(); ++axis) {
        std::size_t len = g.dims[axis];
        std::size_t stride = 1;
        for (std::size_t a = axis + 1; a < g.ndim(); ++a) stride *= g.dims[a];
        std::size_t block = stride * len;      // span of one axis-aligned hyper-row group
        std::size_t n_lines = g.size() / len;
        double total = 0.0;
        // Lines start at every offset whose axis-coordinate is zero.
        for (std::size_t base = 0; base < g.size(); base += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                total += static_cast<double>(
                    count_extrema(g.values.data() + base + inner, len, stride));
            }
        }
        stats.per_axis_mean_count[axis] = total / static_cast<double>(n_lines);
    }
    double s = 0.0;
    for (double m : stats.per_axis_mean_count) s += m;
    stats.total_mean = s / static_cast<double>(g.ndim());
    return stats;
}

} // namespace mif
