#include "tppar/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "tppar/errors.hpp"

namespace tppar {

namespace {

constexpr char kMagic[8] = {'T', 'P', 'F', 'I', 'E', 'L', 'D', '1'};

template <typename T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T take(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw SizeMismatch("field file truncated in header");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_field(const std::string& path, const TPField& u) {
    const GroupGrid& g = *u.grid();
    std::string buf;
    buf.reserve(64 + 16 * u.size());
    buf.append(kMagic, 8);
    put<std::uint32_t>(buf, 1);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim()));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.time_count()));
    for (int i = 0; i < g.dim(); ++i) {
        put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.axis(i).count));
        put<double>(buf, g.axis(i).half_length);
    }
    put<double>(buf, g.period());
    put<std::uint8_t>(buf, u.state() == FieldState::physical ? 0 : 1);
    for (cplx v : u.data()) {
        put<double>(buf, v.real());
        put<double>(buf, v.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SizeMismatch("cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw SizeMismatch("short write to " + path);
}

TPField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SizeMismatch("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 8 || std::memcmp(buf.data(), kMagic, 8) != 0)
        throw BadMagic(path + ": not a TPFIELD1 file");
    std::size_t off = 8;
    const auto version = take<std::uint32_t>(buf, off);
    if (version != 1) throw BadMagic(path + ": unsupported version");
    const auto n = take<std::uint32_t>(buf, off);
    const auto nt = take<std::uint32_t>(buf, off);
    if (n < 1 || n > 8) throw SizeMismatch(path + ": implausible dimension");
    std::vector<AxisSpec> axes;
    std::size_t count = nt;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto ni = take<std::uint32_t>(buf, off);
        auto li = take<double>(buf, off);
        axes.push_back({li, static_cast<int>(ni)});
        count *= ni;
    }
    const double period = take<double>(buf, off);
    const auto state = take<std::uint8_t>(buf, off);
    if (state > 1) throw SizeMismatch(path + ": bad state byte");
    const std::size_t expect = off + 16 * count;
    if (buf.size() != expect)
        throw SizeMismatch(path + ": payload size " + std::to_string(buf.size() - off) +
                           " != expected " + std::to_string(16 * count));
    GridPtr grid = make_grid(period, static_cast<int>(n), static_cast<int>(nt), axes);
    TPField u(grid, state == 0 ? FieldState::physical : FieldState::spectral);
    for (std::size_t j = 0; j < count; ++j) {
        double re = take<double>(buf, off);
        double im = take<double>(buf, off);
        u[j] = cplx(re, im);
    }
    return u;
}

}  // namespace tppar
