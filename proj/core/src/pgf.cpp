#include "homoglab/pgf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include "homoglab/errors.hpp"

namespace homoglab {

namespace {

constexpr std::uint32_t max_dims = 8;
constexpr std::uint64_t max_values = std::uint64_t{1} << 36;

template <class T>
T to_little(T v)
{
    if constexpr (std::endian::native == std::endian::big) {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(b[i], b[sizeof(T) - 1 - i]);
        std::memcpy(&v, b, sizeof(T));
    }
    return v;
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc), path_(path)
    {
        if (!out_)
            throw IoError("cannot open '" + path + "' for writing");
    }
    void bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
    void u32(std::uint32_t v)
    {
        v = to_little(v);
        bytes(reinterpret_cast<const char*>(&v), sizeof v);
    }
    void f64(double v)
    {
        std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
        bytes(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    void f64s(const std::vector<double>& v)
    {
        if constexpr (std::endian::native == std::endian::little)
            bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
        else
            for (double x : v)
                f64(x);
    }
    void finish()
    {
        out_.flush();
        if (!out_)
            throw IoError("write to '" + path_ + "' failed");
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path)
    {
        if (!in_)
            throw IoError("cannot open '" + path + "' for reading");
        in_.seekg(0, std::ios::end);
        size_ = static_cast<std::uint64_t>(in_.tellg());
        in_.seekg(0, std::ios::beg);
    }
    // Rejects sample counts the file cannot hold before allocating them.
    void require_samples(std::uint64_t count)
    {
        const auto pos = static_cast<std::uint64_t>(in_.tellg());
        if (count > (size_ - pos) / sizeof(double))
            throw FormatError("'" + path_ + "' is truncated");
    }
    void bytes(char* p, std::size_t n)
    {
        in_.read(p, static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw FormatError("'" + path_ + "' is truncated");
    }
    std::uint32_t u32()
    {
        std::uint32_t v;
        bytes(reinterpret_cast<char*>(&v), sizeof v);
        return to_little(v);
    }
    double f64()
    {
        std::uint64_t bits;
        bytes(reinterpret_cast<char*>(&bits), sizeof bits);
        return std::bit_cast<double>(to_little(bits));
    }
    void f64s(std::vector<double>& v)
    {
        if constexpr (std::endian::native == std::endian::little)
            bytes(reinterpret_cast<char*>(v.data()), v.size() * sizeof(double));
        else
            for (double& x : v)
                x = f64();
    }
    void expect_end()
    {
        if (in_.peek() != std::char_traits<char>::eof())
            throw FormatError("'" + path_ + "' has trailing bytes");
    }
    const std::string& path() const { return path_; }

private:
    std::ifstream in_;
    std::string path_;
    std::uint64_t size_ = 0;
};

void write_magic(Writer& w, char version)
{
    const char magic[4] = {'P', 'G', 'F', version};
    w.bytes(magic, 4);
}

void read_magic(Reader& r, char version)
{
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, "PGF", 3) != 0)
        throw FormatError("'" + r.path() + "' is not a PGF file (bad magic)");
    if (magic[3] != version)
        throw FormatError("'" + r.path() + "' has format version '" + std::string(1, magic[3]) + "', expected '" +
                          std::string(1, version) + "'");
}

void write_grid_tail(Writer& w, const Grid& g)
{
    w.u32(g.is_periodic() ? 0u : 1u);
    for (int a = 0; a < g.dims(); ++a)
        w.u32(static_cast<std::uint32_t>(g.size(a)));
    if (!g.is_periodic()) {
        for (int a = 0; a < g.dims(); ++a)
            w.f64(g.lower()[a]);
        for (int a = 0; a < g.dims(); ++a)
            w.f64(g.upper()[a]);
    }
}

std::uint32_t checked_dims(std::uint32_t n, const Reader& r)
{
    if (n == 0 || n > max_dims)
        throw FormatError("'" + r.path() + "' declares " + std::to_string(n) + " dimensions");
    return n;
}

Grid read_grid_tail(Reader& r, std::uint32_t n)
{
    const std::uint32_t flag = r.u32();
    if (flag > 1)
        throw FormatError("'" + r.path() + "' has an unknown grid flag " + std::to_string(flag));
    std::vector<int> sizes(n);
    std::uint64_t count = 1;
    for (auto& m : sizes) {
        const std::uint32_t v = r.u32();
        if (v == 0 || v > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
            throw FormatError("'" + r.path() + "' has an invalid grid size");
        m = static_cast<int>(v);
        count *= v;
        if (count > max_values)
            throw FormatError("'" + r.path() + "' declares more samples than supported");
    }
    if (flag == 0) {
        try {
            return Grid::periodic(sizes);
        } catch (const InvalidArgument& e) {
            throw FormatError("'" + r.path() + "': " + e.what());
        }
    }
    std::vector<double> lower(n), upper(n);
    for (auto& v : lower)
        v = r.f64();
    for (auto& v : upper)
        v = r.f64();
    try {
        return Grid::box(lower, upper, sizes);
    } catch (const InvalidArgument& e) {
        throw FormatError("'" + r.path() + "': " + e.what());
    }
}

std::uint32_t checked_components(std::uint32_t d, const Reader& r)
{
    if (d == 0 || d > 4096)
        throw FormatError("'" + r.path() + "' declares " + std::to_string(d) + " components");
    return d;
}

}  // namespace

void write_field(const std::string& path, const GridField& f)
{
    Writer w(path);
    write_magic(w, '1');
    w.u32(static_cast<std::uint32_t>(f.grid.dims()));
    w.u32(static_cast<std::uint32_t>(f.components));
    write_grid_tail(w, f.grid);
    w.f64s(f.data);
    w.finish();
}

GridField read_field(const std::string& path)
{
    Reader r(path);
    read_magic(r, '1');
    const std::uint32_t n = checked_dims(r.u32(), r);
    const std::uint32_t d = checked_components(r.u32(), r);
    const Grid g = read_grid_tail(r, n);
    if (static_cast<std::uint64_t>(g.count()) * d > max_values)
        throw FormatError("'" + path + "' declares more samples than supported");
    r.require_samples(static_cast<std::uint64_t>(g.count()) * d);
    GridField f(g, static_cast<int>(d));
    r.f64s(f.data);
    r.expect_end();
    return f;
}

void write_two_scale(const std::string& path, const TwoScaleField& f)
{
    Writer w(path);
    write_magic(w, '2');
    w.u32(static_cast<std::uint32_t>(f.components));
    w.u32(static_cast<std::uint32_t>(f.xgrid.dims()));
    write_grid_tail(w, f.xgrid);
    w.u32(static_cast<std::uint32_t>(f.ygrid.dims()));
    write_grid_tail(w, f.ygrid);
    w.f64s(f.data);
    w.finish();
}

TwoScaleField read_two_scale(const std::string& path)
{
    Reader r(path);
    read_magic(r, '2');
    const std::uint32_t d = checked_components(r.u32(), r);
    const Grid xg = read_grid_tail(r, checked_dims(r.u32(), r));
    const Grid yg = read_grid_tail(r, checked_dims(r.u32(), r));
    if (static_cast<std::uint64_t>(xg.count()) * yg.count() * d > max_values)
        throw FormatError("'" + path + "' declares more samples than supported");
    r.require_samples(static_cast<std::uint64_t>(xg.count()) * yg.count() * d);
    TwoScaleField f(xg, yg, static_cast<int>(d));
    r.f64s(f.data);
    r.expect_end();
    return f;
}

}  // namespace homoglab
