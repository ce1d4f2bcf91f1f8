#include "landau/newton.hpp"

#include "landau/error.hpp"
#include "landau/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace landau {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

long steps_of(const SimConfig& s) { return std::lround(s.horizon / s.dt); }

DistributionField background(const SimConfig& sim) {
    SimConfig c = sim;
    c.perturbations.clear();
    c.kick.reset();
    return initial_field(c);
}

// Nodal (x, v) samples of d_v f for a mixed field, spectrally; the Nyquist column is dropped.
DistributionField dv_nodal(const DistributionField& f) {
    DistributionField s = f.to(Representation::Spectral);
    const auto& vg = s.grid().v;
    for (std::size_t r = 0; r < s.rows(); ++r) {
        auto row = s.row(r);
        for (std::size_t q = 0; q < vg.nv; ++q)
            row[q] *= q == vg.nv / 2 ? cplx{} : cplx(0.0, two_pi * vg.eta(q));
    }
    s.convert(Representation::Nodal);
    return s;
}

// F_a d_v a + F_b d_v b, mixed.
DistributionField source(std::span<const double> fa, const DistributionField& a, std::span<const double> fb,
                         const DistributionField& b) {
    DistributionField da = dv_nodal(a);
    const DistributionField db = dv_nodal(b);
    for (std::size_t j = 0; j < da.rows(); ++j) {
        auto ra = da.row(j);
        const auto rb = db.row(j);
        for (std::size_t m = 0; m < ra.size(); ++m) ra[m] = fa[j] * ra[m] + fb[j] * rb[m];
    }
    da.convert(Representation::Mixed);
    return da;
}

void axpy(DistributionField& y, double a, const DistributionField& x) {
    auto yv = y.values();
    const auto xv = x.values();
    for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += a * xv[i];
}

double weighted_sup(const DensityModes& rho, double lambda, double mu, double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < rho.rho_hat.size(); ++j) {
        const long k = rho.grid.mode(j);
        if (k == 0) continue;
        s = std::max(s, std::exp(two_pi * (lambda * t + mu) * std::abs(static_cast<double>(k))) * std::abs(rho.rho_hat[j]));
    }
    return s;
}

} // namespace

void NewtonConfig::validate() const {
    sim.validate();
    if (sim.kick) throw ConfigError("Newton scheme does not support echo kicks");
    if (!(lambda1 >= 0.0) || !(mu1 >= 0.0) || !std::isfinite(lambda1) || !std::isfinite(mu1))
        throw ConfigError("Newton delta indices lambda1, mu1 must be finite and >= 0");
    const double kmax = static_cast<double>(sim.grid.x.nx / 2);
    if (two_pi * (lambda1 * sim.horizon + mu1) * kmax > 700.0)
        throw ConfigError("Newton delta weights overflow: lower lambda1, mu1 or T");
    if (k_volterra < 0 || k_volterra >= static_cast<long>(sim.grid.x.nx / 2))
        throw ConfigError("k_volterra must lie in [0, N_x/2)");
    if (!(divergence_factor > 1.0)) throw ConfigError("divergence factor must exceed 1");
    for (double t : field_times)
        if (!(t >= 0.0 && t <= sim.horizon)) throw ConfigError("Newton field times must lie in [0, T]");
}

DistributionField NewtonState::cumulative_final() const {
    DistributionField f = background(cfg.sim);
    for (const auto& s : stages) f += s.final_field;
    return f;
}

NewtonState run_newton(const NewtonConfig& cfg, int n_stages) {
    cfg.validate();
    if (n_stages < 1 || n_stages > NewtonConfig::max_stages)
        throw ConfigError("Newton stage count must lie in [1, " + std::to_string(NewtonConfig::max_stages) + "]");
    const SimConfig& sim = cfg.sim;
    const PhaseGrid& g = sim.grid;
    const auto S = static_cast<std::size_t>(n_stages);
    const long n_steps = steps_of(sim);

    VlasovStepper st(g, sim.w, sim.dt, sim.dealias);
    const DistributionField f0 = background(sim);
    DistributionField hi = initial_field(sim);
    if (sim.dealias) st.dealias(hi);
    hi -= f0;

    // stage 1 along the Volterra route
    const LinearSetup setup{sim.f0, sim.w, g.x.L};
    const long kv = cfg.k_volterra > 0 ? cfg.k_volterra
                                       : (sim.dealias ? static_cast<long>(g.x.nx / 3) : static_cast<long>(g.x.nx / 2) - 1);
    const VolterraSolution sol = solve_volterra(setup, source_from_field(hi), sim.dt, sim.horizon, kv);
    if (static_cast<long>(sol.steps()) != n_steps) throw NumericalError("Volterra grid differs from the step grid");
    LinearEvolution ev(setup, sol, hi);

    // unit-mass shape used to remove the spatial mean of later stages
    std::vector<cplx> shape(f0.row(0).begin(), f0.row(0).end());
    {
        cplx m = 0.0;
        for (const auto& z : shape) m += z * g.v.dv();
        for (auto& z : shape) z /= m;
    }

    NewtonState state;
    state.cfg = cfg;
    state.stages.resize(S);
    for (std::size_t s = 0; s < S; ++s) state.stages[s].index = static_cast<int>(s + 1);

    std::vector<DistributionField> h(S, DistributionField(g, Representation::Mixed));
    h[0] = ev.field();

    std::vector<long> snap_steps;
    for (double t : cfg.field_times) snap_steps.push_back(std::lround(t / sim.dt));

    auto observe = [&](long n) {
        const double t = static_cast<double>(n) * sim.dt;
        const bool rec = n % static_cast<long>(sim.cadence) == 0 || n == n_steps;
        if (rec) state.times.push_back(t);
        for (std::size_t s = 0; s < S; ++s) {
            auto& stage = state.stages[s];
            const DensityModes rho = density(h[s]);
            const double w = weighted_sup(rho, cfg.lambda(stage.index), cfg.mu(stage.index), t);
            if (!std::isfinite(w)) throw NumericalError("Newton stage " + std::to_string(s + 1) + " is not finite");
            if (w > stage.delta) {
                stage.delta = w;
                stage.delta_time = t;
            }
            stage.max_mean = std::max(stage.max_mean, std::abs(rho.rho_hat[0]));
            if (s > 0 && state.stages[0].delta > 0.0 && w > cfg.divergence_factor * state.stages[0].delta)
                throw NumericalError("Newton stage " + std::to_string(s + 1) + " diverged at t = " + std::to_string(t) +
                                     ": weighted density exceeds " + std::to_string(cfg.divergence_factor) +
                                     " delta_1");
            if (rec) {
                std::vector<cplx> r(static_cast<std::size_t>(sim.k_record + 1));
                for (long k = 0; k <= sim.k_record; ++k) r[static_cast<std::size_t>(k)] = rho.at(k);
                stage.rho.push_back(std::move(r));
            }
            if (std::find(snap_steps.begin(), snap_steps.end(), n) != snap_steps.end())
                stage.snapshots.emplace_back(t, h[s]);
        }
    };

    observe(0);
    // Each step: half drift, kick sub-flow, half drift. During the kick every density is frozen, so
    // the forces are constants and stage s+1 obeys d_tau e = -F[f^s] d_v e + src(tau) with
    // src = -F[e] d_v f^s(tau) - F[h^s] d_v h^s(tau). Midpoint rule in tau on the Duhamel form:
    //   e(dt) = K_dt e + dt K_{dt/2} src(dt/2),  e(dt/2) ~ K_{dt/2} e + (dt/2) src(0),
    // with K_h the exact shift by F[f^s] h. Stage 1 has h^1(tau) = h^1 - tau F[h^1] d_v f0 exactly.
    const double dt = sim.dt;
    std::vector<DistributionField> mid(S), half(S);
    std::vector<std::vector<double>> force(S);
    const std::vector<double> no_force(g.x.nx, 0.0);
    for (long n = 1; n <= n_steps; ++n) {
        if (S > 1) {
            for (std::size_t s = 0; s < S; ++s) {
                mid[s] = h[s];
                st.half_drift(mid[s]);
                force[s] = st.force_of(mid[s]);
            }
            half[0] = mid[0];
            axpy(half[0], -0.5 * dt, source(force[0], f0, no_force, f0));
            DistributionField bg0 = f0, bgh = f0; // D f^s at tau = 0 and tau = dt/2
            std::vector<double> fg(g.x.nx, 0.0);
            for (std::size_t s = 1; s < S; ++s) {
                bg0 += mid[s - 1];
                bgh += half[s - 1];
                for (std::size_t j = 0; j < g.x.nx; ++j) fg[j] += force[s - 1][j];
                const DistributionField src0 = source(force[s], bg0, force[s - 1], mid[s - 1]);
                if (s + 1 < S) {
                    half[s] = mid[s];
                    st.kick(half[s], fg, 0.5 * dt);
                    axpy(half[s], -0.5 * dt, src0);
                }
                DistributionField srch = source(force[s], bgh, force[s - 1], half[s - 1]);
                st.kick(srch, fg, 0.5 * dt);
                DistributionField e = mid[s];
                st.kick(e, fg, dt);
                axpy(e, -dt, srch);
                st.half_drift(e);
                if (sim.dealias) st.dealias(e);
                cplx m = 0.0;
                for (const auto& z : e.row(0)) m += z * g.v.dv();
                auto r0 = e.row(0);
                for (std::size_t q = 0; q < r0.size(); ++q) r0[q] -= m * shape[q];
                h[s] = std::move(e);
            }
        }
        ev.advance();
        h[0] = ev.field();
        observe(n);
    }
    for (std::size_t s = 0; s < S; ++s) state.stages[s].final_field = h[s];
    return state;
}

NewtonState newton_stage1(const NewtonConfig& cfg) { return run_newton(cfg, 1); }

NewtonState newton_stage(const NewtonState& state) {
    if (state.n() < 1) throw ConfigError("Newton state holds no stage");
    if (state.n() >= NewtonConfig::max_stages)
        throw ConfigError("Newton scheme is capped at " + std::to_string(NewtonConfig::max_stages) + " stages");
    return run_newton(state.cfg, state.n() + 1);
}

DeltaReport track_deltas(const NewtonState& state) {
    DeltaReport r;
    for (const auto& s : state.stages) r.delta.push_back(s.delta);
    std::ostringstream os;
    for (std::size_t k = 0; k + 1 < r.delta.size(); ++k) {
        const double a = r.delta[k], b = r.delta[k + 1];
        r.ratio.push_back(a > 0.0 ? b / (a * a) : 0.0);
        if (b > a) {
            r.decreasing = false;
            os << "delta_" << k + 2 << " > delta_" << k + 1 << "; ";
        }
        // observed order log(b)/log(a) below 1.5 while a < 1 is not quadratic
        if (a > 0.0 && a < 1.0 && b > 0.0 && std::log(b) / std::log(a) < 1.5) {
            r.quadratic = false;
            os << "order " << std::log(b) / std::log(a) << " at stage " << k + 2 << "; ";
        }
    }
    r.detail = os.str();
    return r;
}

double l2_distance(const DistributionField& a, const DistributionField& b) {
    if (!(a.grid() == b.grid())) throw DomainError("L2 distance: grids differ");
    const DistributionField d = (a.to(Representation::Nodal) - b.to(Representation::Nodal));
    double s = 0.0;
    for (const auto& z : d.values()) s += std::norm(z);
    return std::sqrt(s * a.grid().x.dx() * a.grid().v.dv());
}

} // namespace landau
