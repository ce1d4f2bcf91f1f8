#include "landau/field_io.hpp"

#include "landau/csv.hpp"
#include "landau/error.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace landau {

namespace {
constexpr std::array<char, 8> magic{'L', 'N', 'D', 'F', 'L', 'D', '0', '1'};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError("field container truncated");
    return v;
}
} // namespace

void write_field(std::ostream& os, const DistributionField& f) {
    const auto& g = f.grid();
    os.write(magic.data(), magic.size());
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.representation()));
    put<std::uint32_t>(os, 0);
    put<double>(os, g.x.L);
    put<std::uint64_t>(os, g.x.nx);
    put<double>(os, g.v.vmax);
    put<std::uint64_t>(os, g.v.nv);
    for (const cplx& z : f.values()) {
        put<double>(os, z.real());
        put<double>(os, z.imag());
    }
}

DistributionField read_field(std::istream& is) {
    std::array<char, 8> m{};
    if (!is.read(m.data(), m.size()) || m != magic) throw ConfigError("not a field container (bad magic)");
    const auto rep = get<std::uint32_t>(is);
    get<std::uint32_t>(is);
    if (rep > 2) throw ConfigError("field container has unknown representation tag");
    PhaseGrid g;
    g.x.L = get<double>(is);
    g.x.nx = get<std::uint64_t>(is);
    g.v.vmax = get<double>(is);
    g.v.nv = get<std::uint64_t>(is);
    DistributionField f(g, static_cast<Representation>(rep));
    for (cplx& z : f.values()) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        z = {re, im};
    }
    return f;
}

void write_field(const std::filesystem::path& path, const DistributionField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write field file " + path.string());
    write_field(os, f);
}

DistributionField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open field file " + path.string());
    return read_field(is);
}

void write_field_csv(std::ostream& os, const DistributionField& f) {
    const auto& g = f.grid();
    const bool modes = f.representation() != Representation::Nodal;
    const bool dual = f.representation() == Representation::Spectral;
    CsvWriter w(os, {"row", "col", modes ? "k" : "x", dual ? "eta" : "v", "re", "im"});
    for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c) {
            const double a = modes ? static_cast<double>(g.x.mode(r)) : g.x.node(r);
            const double b = dual ? g.v.eta(c) : g.v.node(c);
            w.row({static_cast<double>(r), static_cast<double>(c), a, b, f.at(r, c).real(), f.at(r, c).imag()});
        }
}

} // namespace landau
