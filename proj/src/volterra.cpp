#include "landau/error.hpp"
#include "landau/linear.hpp"
#include "landau/parallel.hpp"
#include "landau/simd/kernels.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace landau {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr cplx I{0.0, 1.0};
} // namespace

std::vector<double> VolterraSolution::times() const {
    std::vector<double> t(steps() + 1);
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = time(j);
    return t;
}

VolterraSource source_from_field(const DistributionField& fi) {
    auto mixed = std::make_shared<const DistributionField>(fi.to(Representation::Mixed));
    const double L = fi.grid().x.L;
    const long kmax = static_cast<long>(fi.grid().x.nx / 2) - 1;
    return [mixed, L, kmax](double t, long k) -> cplx {
        if (k > kmax || k < -kmax) throw DomainError("Volterra source: mode outside the field grid");
        return transform_at(*mixed, k, static_cast<double>(k) * t / L);
    };
}

VolterraSolution solve_volterra(const LinearSetup& s, const VolterraSource& a, double dt, double horizon, long k_max) {
    if (!(dt > 0.0) || !(horizon >= 0.0) || k_max < 0) throw ConfigError("Volterra solve needs dt > 0, T >= 0, k_max >= 0");
    VolterraSolution sol;
    sol.dt = dt;
    sol.horizon = horizon;
    sol.k_max = k_max;
    sol.L = s.L;
    const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    sol.modes.assign(static_cast<std::size_t>(2 * k_max + 1), std::vector<cplx>(n + 1));

    parallel_for(sol.modes.size(), [&](std::size_t idx) {
        const long k = static_cast<long>(idx) - k_max;
        auto& rho = sol.modes[idx];
        std::vector<cplx> K(n + 1);
        for (std::size_t m = 0; m <= n; ++m) K[m] = kernel_K0(s, static_cast<double>(m) * dt, k);
        // rev[n - j] = rho_j so that sum_{m=1}^{j-1} K_m rho_{j-m} is a contiguous dot product
        std::vector<cplx> rev(n + 1);
        const auto& ker = simd::kernels();
        for (std::size_t j = 0; j <= n; ++j) {
            cplx acc = a(static_cast<double>(j) * dt, k);
            if (j > 0) {
                cplx conv = 0.5 * K[j] * rho[0];
                if (j > 1) conv += ker.cdot(&K[1], &rev[n - j + 1], j - 1);
                acc += dt * conv;
            }
            rho[j] = acc;
            rev[n - j] = acc;
        }
    });
    return sol;
}

LinearEvolution::LinearEvolution(const LinearSetup& s, const VolterraSolution& sol, const DistributionField& fi)
    : s_(s), sol_(&sol), fi_(fi.to(Representation::Mixed)) {
    const auto& g = fi_.grid();
    if (std::abs(g.x.L - s.L) > 1e-12 * s.L || std::abs(sol.L - s.L) > 1e-12 * s.L)
        throw ConfigError("linear reconstruction: box length of field, solution and setup differ");
    const std::size_t nx = fi_.rows(), nv = fi_.cols();
    memory_.assign(nx * nv, 0.0);
    rotor_.resize(nx * nv);
    drive_.assign(nx * nv, 0.0);
    for (std::size_t r = 0; r < nx; ++r) {
        const long k = g.x.mode(r);
        const double q = static_cast<double>(k) / s.L;
        phase_ramp(&rotor_[r * nv], nv, two_pi * q * g.v.vmax * sol.dt, -two_pi * q * g.v.dv() * sol.dt);
        if (k == 0 || std::abs(k) > sol.k_max) continue;
        const cplx c = two_pi * I * q * s.w.w_hat_L(k, s.L);
        for (std::size_t m = 0; m < nv; ++m) drive_[r * nv + m] = c * s.f0.f0_prime(g.v.node(m));
    }
}

void LinearEvolution::advance() {
    if (n_ >= sol_->steps()) throw DomainError("linear reconstruction ran past the Volterra horizon");
    const auto& g = fi_.grid();
    const std::size_t nv = fi_.cols();
    const double h = 0.5 * sol_->dt;
    for (std::size_t r = 0; r < fi_.rows(); ++r) {
        const long k = g.x.mode(r);
        if (k == 0 || std::abs(k) > sol_->k_max) continue;
        const auto& rho = sol_->mode(k);
        const cplx r0 = h * rho[n_], r1 = h * rho[n_ + 1];
        cplx* mem = &memory_[r * nv];
        const cplx* rot = &rotor_[r * nv];
        for (std::size_t m = 0; m < nv; ++m) mem[m] = rot[m] * (mem[m] + r0) + r1;
    }
    ++n_;
}

DistributionField LinearEvolution::field() const {
    DistributionField out = fi_;
    const auto& g = fi_.grid();
    const std::size_t nv = fi_.cols();
    const double t = time();
    std::vector<cplx> ph(nv);
    for (std::size_t r = 0; r < fi_.rows(); ++r) {
        const long k = g.x.mode(r);
        if (k == 0) continue;
        const double q = static_cast<double>(k) / s_.L;
        phase_ramp(ph.data(), nv, two_pi * q * g.v.vmax * t, -two_pi * q * g.v.dv() * t);
        auto row = out.row(r);
        const cplx* d = &drive_[r * nv];
        const cplx* mem = &memory_[r * nv];
        for (std::size_t m = 0; m < nv; ++m) row[m] = row[m] * ph[m] + d[m] * mem[m];
    }
    return out;
}

std::vector<DistributionField> reconstruct_f(const LinearSetup& s, const VolterraSolution& sol,
                                             const DistributionField& fi, std::span<const std::size_t> steps) {
    LinearEvolution ev(s, sol, fi);
    std::vector<DistributionField> out;
    out.reserve(steps.size());
    for (std::size_t target : steps) {
        if (target < ev.step_index()) throw ConfigError("reconstruct_f: output steps must be ascending");
        while (ev.step_index() < target) ev.advance();
        out.push_back(ev.field());
    }
    return out;
}

} // namespace landau
