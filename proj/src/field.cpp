#include "landau/field.hpp"

#include "landau/error.hpp"
#include "landau/fft.hpp"
#include "landau/parallel.hpp"
#include "landau/profiles.hpp"
#include "landau/simd/kernels.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace landau {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

const Fft& fft_of(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<Fft>> cache;
    std::lock_guard lock(mu);
    auto& p = cache[n];
    if (!p) p = std::make_unique<Fft>(n);
    return *p;
}
} // namespace

void TorusGrid::validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("box length L must be positive");
    if (nx < 4 || !is_power_of_two(nx))
        throw ConfigError("N_x = " + std::to_string(nx) + " must be a power of two >= 4");
}

long TorusGrid::mode(std::size_t j) const {
    return j < nx / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(nx);
}

std::size_t TorusGrid::index(long k) const {
    const long n = static_cast<long>(nx);
    if (k < -n / 2 || k >= n / 2) throw DomainError("mode " + std::to_string(k) + " not on the grid");
    return static_cast<std::size_t>(k < 0 ? k + n : k);
}

void VelocityGrid::validate() const {
    if (!(vmax > 0.0) || !std::isfinite(vmax)) throw ConfigError("V_max must be positive");
    if (nv < 4 || !is_power_of_two(nv))
        throw ConfigError("N_v = " + std::to_string(nv) + " must be a power of two >= 4");
}

long VelocityGrid::dual_index(std::size_t i) const {
    return i < nv / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(nv);
}

std::size_t VelocityGrid::index(long q) const {
    const long n = static_cast<long>(nv);
    if (q < -n / 2 || q >= n / 2) throw DomainError("dual index " + std::to_string(q) + " not on the grid");
    return static_cast<std::size_t>(q < 0 ? q + n : q);
}

std::string_view to_string(Representation r) {
    switch (r) {
    case Representation::Nodal: return "nodal";
    case Representation::Mixed: return "mixed";
    case Representation::Spectral: return "spectral";
    }
    return "?";
}

Representation representation_from_string(std::string_view s) {
    if (s == "nodal") return Representation::Nodal;
    if (s == "mixed") return Representation::Mixed;
    if (s == "spectral") return Representation::Spectral;
    throw ConfigError("unknown representation '" + std::string(s) + "'");
}

DistributionField::DistributionField(PhaseGrid grid, Representation rep) : grid_(grid), rep_(rep) {
    grid_.validate();
    data_.assign(grid_.size(), cplx{});
}

DistributionField DistributionField::from_function(PhaseGrid grid,
                                                   const std::function<double(double, double)>& f) {
    DistributionField out(grid, Representation::Nodal);
    for (std::size_t j = 0; j < grid.x.nx; ++j)
        for (std::size_t m = 0; m < grid.v.nv; ++m) out.at(j, m) = f(grid.x.node(j), grid.v.node(m));
    return out;
}

void DistributionField::nodal_to_mixed() {
    fft_of(rows()).forward_rows(data_.data(), cols());
    simd::kernels().cscale(data_.data(), grid_.x.dx(), data_.size());
}

void DistributionField::mixed_to_nodal() {
    fft_of(rows()).inverse_rows(data_.data(), cols());
    simd::kernels().cscale(data_.data(), 1.0 / grid_.x.L, data_.size());
}

// v_m = -vmax + m dv, so exp(-2 i pi eta_q v_m) = (-1)^q exp(-2 i pi q m / nv).
void DistributionField::mixed_to_spectral() {
    const auto& fft = fft_of(cols());
    const double dv = grid_.v.dv();
    parallel_for(rows(), [&](std::size_t r) {
        cplx* p = data_.data() + r * cols();
        fft.forward(p);
        for (std::size_t q = 0; q < cols(); ++q) p[q] *= (q & 1) ? -dv : dv;
    });
}

void DistributionField::spectral_to_mixed() {
    const auto& fft = fft_of(cols());
    const double de = grid_.v.deta();
    parallel_for(rows(), [&](std::size_t r) {
        cplx* p = data_.data() + r * cols();
        for (std::size_t q = 0; q < cols(); ++q) p[q] *= (q & 1) ? -de : de;
        fft.inverse(p);
    });
}

void DistributionField::convert(Representation target) {
    if (target == rep_) return;
    if (rep_ == Representation::Nodal) nodal_to_mixed();
    if (rep_ == Representation::Spectral) spectral_to_mixed();
    // now mixed
    if (target == Representation::Nodal) mixed_to_nodal();
    if (target == Representation::Spectral) mixed_to_spectral();
    rep_ = target;
}

DistributionField DistributionField::to(Representation target) const {
    DistributionField out = *this;
    out.convert(target);
    return out;
}

DistributionField& DistributionField::operator+=(const DistributionField& o) {
    if (!(o.grid_ == grid_) || o.rep_ != rep_) throw DomainError("field sum needs equal grids and representations");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

DistributionField& DistributionField::operator-=(const DistributionField& o) {
    if (!(o.grid_ == grid_) || o.rep_ != rep_) throw DomainError("field difference needs equal grids and representations");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

DistributionField& DistributionField::operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
}

DistributionField operator+(DistributionField a, const DistributionField& b) { return a += b; }
DistributionField operator-(DistributionField a, const DistributionField& b) { return a -= b; }

DistributionField to_spectral(const DistributionField& f) { return f.to(Representation::Spectral); }
DistributionField to_nodal(const DistributionField& f) { return f.to(Representation::Nodal); }
DistributionField to_mixed(const DistributionField& f) { return f.to(Representation::Mixed); }

void phase_ramp(cplx* out, std::size_t n, double theta0, double dtheta) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = theta0 + static_cast<double>(i) * dtheta;
        out[i] = {std::cos(a), std::sin(a)};
    }
}

void free_transport_mixed(DistributionField& f, double t) {
    if (f.representation() != Representation::Mixed) throw DomainError("free_transport_mixed needs a mixed field");
    const auto& g = f.grid();
    const auto& k = simd::kernels();
    parallel_for(f.rows(), [&](std::size_t r) {
        const long kk = g.x.mode(r);
        if (kk == 0 || t == 0.0) return;
        // exp(-2 i pi (k/L) v_m t), v_m = -vmax + m dv
        const double s = two_pi * static_cast<double>(kk) / g.x.L * t;
        std::vector<cplx> ph(f.cols());
        phase_ramp(ph.data(), ph.size(), s * g.v.vmax, -s * g.v.dv());
        k.cmul(f.row(r).data(), ph.data(), ph.size());
    });
}

DistributionField free_transport(const DistributionField& f, double t) {
    DistributionField out = f.to(Representation::Mixed);
    free_transport_mixed(out, t);
    out.convert(f.representation());
    return out;
}

cplx transform_at(const DistributionField& f, long k, double eta) {
    if (f.representation() != Representation::Mixed) throw DomainError("transform_at needs a mixed field");
    const auto& g = f.grid();
    std::vector<cplx> ph(f.cols());
    const double s = two_pi * eta;
    phase_ramp(ph.data(), ph.size(), s * g.v.vmax, -s * g.v.dv());
    return g.v.dv() * simd::kernels().cdot(f.row(g.x.index(k)).data(), ph.data(), ph.size());
}

DensityModes density(const DistributionField& f) {
    if (f.representation() == Representation::Spectral) {
        // rho^(k) = f~(k, 0)
        DensityModes d{f.grid().x, std::vector<cplx>(f.rows())};
        for (std::size_t r = 0; r < f.rows(); ++r) d.rho_hat[r] = f.at(r, 0);
        return d;
    }
    const DistributionField* src = &f;
    DistributionField tmp;
    if (f.representation() == Representation::Nodal) {
        tmp = f.to(Representation::Mixed);
        src = &tmp;
    }
    DensityModes d{f.grid().x, std::vector<cplx>(f.rows())};
    const double dv = f.grid().v.dv();
    const auto& k = simd::kernels();
    for (std::size_t r = 0; r < f.rows(); ++r) d.rho_hat[r] = dv * k.csum(src->row(r).data(), f.cols());
    return d;
}

std::vector<cplx> force_modes(const DensityModes& rho, const Interaction& w) {
    const auto& g = rho.grid;
    std::vector<cplx> out(rho.rho_hat.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const long k = g.mode(j);
        if (k == 0) continue;
        const double wk = w.w_hat_L(k, g.L);
        if (!std::isfinite(wk)) throw ConfigError("interaction has no finite value at mode " + std::to_string(k));
        out[j] = cplx{0.0, -two_pi * static_cast<double>(k) / g.L * wk} * rho.rho_hat[j];
    }
    return out;
}

std::vector<double> force_nodal(const TorusGrid& g, std::span<const cplx> modes) {
    std::vector<cplx> tmp(modes.begin(), modes.end());
    fft_of(g.nx).inverse(tmp.data());
    std::vector<double> out(g.nx);
    for (std::size_t j = 0; j < g.nx; ++j) out[j] = tmp[j].real() / g.L;
    return out;
}

} // namespace landau
