#include "landau/nonlinear.hpp"

#include "landau/csv.hpp"
#include "landau/error.hpp"
#include "landau/parallel.hpp"
#include "landau/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

// Steps of size dt that reach time t, or -1 when t is not on the step grid.
long step_count(double t, double dt) {
    const double n = std::round(t / dt);
    if (std::abs(n * dt - t) > 1e-9 * std::max(1.0, std::abs(t))) return -1;
    return static_cast<long>(n);
}

struct ForceNorms {
    double sup = 0.0, l2 = 0.0, h1 = 0.0;
};

ForceNorms force_norms(const TorusGrid& g, std::span<const cplx> modes) {
    ForceNorms n;
    for (double v : force_nodal(g, modes)) n.sup = std::max(n.sup, std::abs(v));
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double a = std::norm(modes[j]) / g.L;
        const double q = two_pi * static_cast<double>(g.mode(j)) / g.L;
        n.l2 += a;
        n.h1 += (1.0 + q * q) * a;
    }
    n.l2 = std::sqrt(n.l2);
    n.h1 = std::sqrt(n.h1);
    return n;
}

double boundary_mass_nodal(const DistributionField& nodal) {
    const auto& g = nodal.grid();
    double s = 0.0;
    for (std::size_t m = 0; m < g.v.nv; ++m) {
        if (std::abs(g.v.node(m)) < 0.95 * g.v.vmax) continue;
        for (std::size_t j = 0; j < g.x.nx; ++j) s += std::abs(nodal.at(j, m));
    }
    return s * g.x.dx() * g.v.dv();
}

} // namespace

void SimConfig::validate() const {
    grid.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("T must be positive");
    if (step_count(horizon, dt) < 1) throw ConfigError("T must be a positive multiple of dt");
    if (cadence < 1) throw ConfigError("cadence must be >= 1");
    if (k_record < 0 || k_record >= static_cast<long>(grid.x.nx / 2))
        throw ConfigError("k_record must lie in [0, N_x/2)");
    for (const auto& p : perturbations) {
        if (!std::isfinite(p.amplitude) || !std::isfinite(p.phase)) throw ConfigError("perturbation must be finite");
        if (p.mode == 0 || std::abs(p.mode) >= static_cast<long>(grid.x.nx / 2))
            throw ConfigError("perturbation mode " + std::to_string(p.mode) + " not resolved on the grid");
        if (p.shape == Perturbation::Shape::Maxwellian && !(p.T > 0.0))
            throw ConfigError("perturbation temperature must be positive");
    }
    if (kick) {
        if (!(kick->time >= 0.0 && kick->time <= horizon)) throw ConfigError("kick time must lie in [0, T]");
        if (step_count(kick->time, dt) < 0) throw ConfigError("kick time must be a multiple of dt");
        if (kick->mode == 0 || std::abs(kick->mode) >= static_cast<long>(grid.x.nx / 2))
            throw ConfigError("kick mode not resolved on the grid");
        if (!(std::abs(kick->amplitude) < 1.0)) throw ConfigError("kick amplitude must satisfy |eps2| < 1");
    }
    for (double t : snapshot_times)
        if (!(t >= 0.0 && t <= horizon)) throw ConfigError("snapshot times must lie in [0, T]");
}

std::vector<cplx> SimOutput::mode_series(long k) const {
    if (k < 0 || rho.empty() || static_cast<std::size_t>(k) >= rho.front().size())
        throw DomainError("mode " + std::to_string(k) + " was not recorded");
    std::vector<cplx> s(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) s[j] = rho[j][static_cast<std::size_t>(k)];
    return s;
}

Conserved conserved_quantities(const DistributionField& f, const Interaction& w) {
    const DistributionField mixed = f.representation() == Representation::Mixed ? f : f.to(Representation::Mixed);
    const auto& g = f.grid();
    const double dv = g.v.dv();
    Conserved c;
    for (std::size_t m = 0; m < g.v.nv; ++m) {
        const double v = g.v.node(m), a = mixed.at(0, m).real() * dv;
        c.mass += a;
        c.momentum += v * a;
        c.kinetic += 0.5 * v * v * a;
    }
    const DensityModes rho = density(mixed);
    for (std::size_t j = 0; j < g.x.nx; ++j) {
        const long k = g.x.mode(j);
        if (k == 0) continue;
        c.potential += w.w_hat_L(k, g.x.L) * std::norm(rho.rho_hat[j]);
    }
    c.potential /= 2.0 * g.x.L;
    c.energy = c.kinetic + c.potential;

    const DistributionField nodal = f.representation() == Representation::Nodal ? f : mixed.to(Representation::Nodal);
    double s = 0.0;
    for (const cplx& z : nodal.values()) {
        const double v = std::max(z.real(), 1e-300);
        s -= v * std::log(v);
    }
    c.entropy = s * g.x.dx() * dv;
    return c;
}

VlasovStepper::VlasovStepper(const PhaseGrid& grid, const Interaction& w, double dt, bool dealias)
    : grid_(grid), w_(w), dt_(dt), dealias_(dealias), fx_(grid.x.nx), fv_(grid.v.nv) {
    grid_.validate();
    if (!std::isfinite(dt) || dt == 0.0) throw ConfigError("time step must be finite and nonzero");
    const std::size_t nx = grid_.x.nx, nv = grid_.v.nv;
    drift_.resize(nx * nv);
    for (std::size_t r = 0; r < nx; ++r) {
        const long k = grid_.x.mode(r);
        const double s = two_pi * static_cast<double>(k) / grid_.x.L * 0.5 * dt_;
        cplx* p = drift_.data() + r * nv;
        // the Nyquist row keeps its full phase too: every sub-flow stays unitary
        phase_ramp(p, nv, s * grid_.v.vmax, -s * grid_.v.dv());
    }
    force_modes_.assign(nx, cplx{});
}

void VlasovStepper::half_drift(DistributionField& f) const {
    const std::size_t nv = grid_.v.nv;
    const auto& k = simd::kernels();
    parallel_for(grid_.x.nx, [&](std::size_t r) { k.cmul(f.row(r).data(), drift_.data() + r * nv, nv); });
}

std::vector<double> VlasovStepper::force_of(const DistributionField& f, std::vector<cplx>* modes) const {
    auto fm = landau::force_modes(density(f), w_);
    auto nodal = force_nodal(grid_.x, fm);
    if (modes) *modes = std::move(fm);
    return nodal;
}

void VlasovStepper::dealias(DistributionField& f) const {
    const long cut = static_cast<long>(grid_.x.nx / 3);
    for (std::size_t r = 0; r < grid_.x.nx; ++r)
        if (std::abs(grid_.x.mode(r)) > cut)
            for (auto& z : f.row(r)) z = 0.0;
}

void VlasovStepper::to_nodal(DistributionField& f) const { f.convert(Representation::Nodal); }
void VlasovStepper::to_mixed(DistributionField& f) const { f.convert(Representation::Mixed); }

void VlasovStepper::kick(DistributionField& f, std::span<const double> force, double h) {
    if (f.representation() != Representation::Mixed) throw DomainError("kick needs a mixed field");
    const std::size_t nx = grid_.x.nx, nv = grid_.v.nv;
    if (force.size() != nx) throw DomainError("force length differs from N_x");
    cplx* data = f.values().data();
    // Unscaled transforms in both directions; the 1/(nx nv) normalisation rides on the phase.
    fx_.inverse_rows(data, nv);
    const double norm = 1.0 / static_cast<double>(nx * nv);
    const double deta = grid_.v.deta();
    const auto& k = simd::kernels();
    std::vector<double> edge(nx, 0.0);
    parallel_for(nx, [&](std::size_t j) {
        cplx* p = data + j * nv;
        fv_.forward(p);
        // f(v - F h) <-> exp(-2 i pi eta F h) f~(eta)
        const double d = -two_pi * deta * force[j] * h;
        std::vector<cplx> ph(nv);
        phase_ramp(ph.data(), nv / 2, 0.0, d);
        phase_ramp(ph.data() + nv / 2, nv / 2, -d * static_cast<double>(nv / 2), d);
        k.cmul(p, ph.data(), nv);
        k.cscale(p, norm, nv);
        fv_.inverse(p);
        double s = 0.0;
        for (std::size_t m = 0; m < nv; ++m)
            if (std::abs(grid_.v.node(m)) >= 0.95 * grid_.v.vmax) s += std::abs(p[m]);
        edge[j] = s;
    });
    double s = 0.0;
    for (double e : edge) s += e;
    boundary_mass_ = s * grid_.x.dx() * grid_.v.dv();
    fx_.forward_rows(data, nv);
    if (dealias_) dealias(f);
}

void VlasovStepper::step(DistributionField& f) {
    if (f.representation() != Representation::Mixed) throw DomainError("step_strang needs a mixed field");
    if (!(f.grid() == grid_)) throw DomainError("field grid differs from the stepper grid");
    half_drift(f);
    const auto force = force_of(f, &force_modes_);
    kick(f, force, dt_);
    half_drift(f);
}

DistributionField step_strang(const DistributionField& f, double dt, const Interaction& w) {
    VlasovStepper st(f.grid(), w, dt);
    DistributionField out = f;
    st.step(out);
    if (st.boundary_mass() > 1e-8)
        throw NumericalError("boundary mass " + format_double(st.boundary_mass()) + " exceeds 1e-8");
    return out;
}

DistributionField initial_field(const SimConfig& cfg) {
    cfg.validate();
    const auto& g = cfg.grid;
    std::vector<double> theta_bg(g.v.nv);
    for (std::size_t m = 0; m < g.v.nv; ++m) theta_bg[m] = cfg.f0.f0(g.v.node(m));
    DistributionField f(g, Representation::Nodal);
    for (std::size_t j = 0; j < g.x.nx; ++j) {
        const double x = g.x.node(j);
        for (std::size_t m = 0; m < g.v.nv; ++m) {
            const double v = g.v.node(m);
            double val = theta_bg[m];
            for (const auto& p : cfg.perturbations) {
                const double theta = p.shape == Perturbation::Shape::Background
                                         ? theta_bg[m]
                                         : std::exp(-(v - p.center) * (v - p.center) / (2.0 * p.T)) /
                                               std::sqrt(two_pi * p.T);
                val += p.amplitude * std::cos(two_pi * static_cast<double>(p.mode) * x / g.x.L + p.phase) * theta;
            }
            if (val < -1e-12)
                throw ConfigError("initial datum is negative (" + std::to_string(val) + ") at x = " +
                                  std::to_string(x) + ", v = " + std::to_string(v));
            f.at(j, m) = val;
        }
        if (std::abs(f.at(j, 0)) > 1e-12)
            throw ConfigError("initial datum is not below 1e-12 at the velocity boundary; enlarge V_max");
    }
    f.convert(Representation::Mixed);
    return f;
}

SimOutput run_simulation(const SimConfig& cfg) {
    cfg.validate();
    DistributionField f = initial_field(cfg);
    const auto& g = cfg.grid;
    VlasovStepper st(g, cfg.w, cfg.dt, cfg.dealias);
    if (cfg.dealias) st.dealias(f);

    const long n_steps = step_count(cfg.horizon, cfg.dt);
    const long kick_step = cfg.kick ? step_count(cfg.kick->time, cfg.dt) : -1;
    std::vector<long> snap_steps;
    for (double t : cfg.snapshot_times) snap_steps.push_back(std::lround(t / cfg.dt));

    SimOutput out;
    out.force.grid = g.x;

    auto apply_kick = [&]() {
        if (cfg.kick->amplitude == 0.0) return;
        const double mass0 = density(f).rho_hat[0].real();
        f.convert(Representation::Nodal);
        for (std::size_t j = 0; j < g.x.nx; ++j) {
            const double a =
                1.0 + cfg.kick->amplitude * std::cos(two_pi * static_cast<double>(cfg.kick->mode) * g.x.node(j) / g.x.L);
            for (auto& z : f.row(j)) z *= a;
        }
        f.convert(Representation::Mixed);
        if (cfg.dealias) st.dealias(f);
        const double mass1 = density(f).rho_hat[0].real();
        if (mass1 != 0.0) f *= mass0 / mass1;
    };

    auto record = [&](long n) {
        const double t = static_cast<double>(n) * cfg.dt;
        const DensityModes rho = density(f);
        const auto fm = force_modes(rho, cfg.w);
        const ForceNorms nrm = force_norms(g.x, fm);
        out.times.push_back(t);
        std::vector<cplx> r(static_cast<std::size_t>(cfg.k_record + 1));
        for (long k = 0; k <= cfg.k_record; ++k) r[static_cast<std::size_t>(k)] = rho.at(k);
        out.rho.push_back(std::move(r));
        out.force_sup.push_back(nrm.sup);
        out.force_l2.push_back(nrm.l2);
        out.force_h1.push_back(nrm.h1);
        out.conserved.push_back(conserved_quantities(f, cfg.w));
        out.boundary_mass.push_back(n == 0 ? boundary_mass_nodal(f.to(Representation::Nodal)) : st.boundary_mass());
        if (cfg.record_force) {
            out.force.times.push_back(t);
            out.force.modes.push_back(fm);
        }
    };
    auto snapshot = [&](long n) {
        for (std::size_t i = 0; i < snap_steps.size(); ++i)
            if (snap_steps[i] == n) out.snapshots.emplace_back(cfg.snapshot_times[i], f);
    };

    if (kick_step == 0) apply_kick();
    record(0);
    snapshot(0);
    for (long n = 1; n <= n_steps; ++n) {
        st.step(f);
        if (st.boundary_mass() > cfg.boundary_tol)
            throw NumericalError("boundary mass " + format_double(st.boundary_mass()) + " exceeds " +
                                 format_double(cfg.boundary_tol) + " at t = " +
                                 format_double(static_cast<double>(n) * cfg.dt) + "; enlarge V_max or N_v");
        if (n == kick_step) apply_kick();
        if (n % static_cast<long>(cfg.cadence) == 0 || n == n_steps) record(n);
        snapshot(n);
    }
    out.final_state = std::move(f);
    return out;
}

double predict_echo_time(long k, long l, double tau) {
    if (k == 0) throw DomainError("echo mode k must be nonzero");
    const double t = tau * static_cast<double>(k - l) / static_cast<double>(k);
    if (!(t > tau)) throw DomainError("no echo: k (t - tau) + l tau = 0 has no solution with t > tau");
    return t;
}

EchoResult echo_experiment(const SimConfig& cfg, long k, double t_min, double noise_floor) {
    if (!cfg.kick) throw ConfigError("echo experiment needs a kick");
    if (k < 1 || k > cfg.k_record) throw ConfigError("echo mode must lie in [1, k_record]");
    EchoResult res;
    res.k = k;
    res.output = run_simulation(cfg);
    const auto& t = res.output.times;
    std::vector<double> a(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) a[j] = std::abs(res.output.rho[j][static_cast<std::size_t>(k)]);
    for (std::size_t j = 1; j + 1 < t.size(); ++j) {
        if (t[j] <= t_min || !(a[j] > a[j - 1] && a[j] >= a[j + 1]) || a[j] <= noise_floor) continue;
        const double den = a[j - 1] - 2.0 * a[j] + a[j + 1];
        const double off = den < 0.0 ? 0.5 * (a[j - 1] - a[j + 1]) / den : 0.0;
        res.peaks.push_back({t[j] + off * (t[j + 1] - t[j]), a[j] - 0.25 * (a[j - 1] - a[j + 1]) * off});
    }
    std::sort(res.peaks.begin(), res.peaks.end(), [](const EchoPeak& x, const EchoPeak& y) { return x.height > y.height; });
    res.detected = !res.peaks.empty();
    return res;
}

ScatteringDeviation compute_scattering(const ForceHistory& h, double t, double tau, std::span<const double> xs,
                                       std::span<const double> vs, double vmax, int substeps) {
    if (xs.size() != vs.size()) throw ConfigError("sample x and v lists differ in length");
    if (substeps < 1) throw ConfigError("substeps must be >= 1");
    if (h.times.size() < 2 || h.modes.size() != h.times.size()) throw DomainError("force history needs >= 2 records");
    const double t0 = h.times.front(), spacing = h.times[1] - h.times[0];
    const double t_end = h.times.back();
    auto on_grid = [&](double s) { return step_count(s - t0, spacing) >= 0; };
    if (tau > t || tau < t0 - 1e-12 || t > t_end + 1e-12 || !on_grid(t) || !on_grid(tau))
        throw DomainError("scattering times must satisfy t0 <= tau <= t <= t_end on the history grid");

    const auto& g = h.grid;
    const std::size_t nx = g.nx;
    const auto& kern = simd::kernels();
    // F(s, x) = (1/L) Re sum_k F^(s,k) exp(2 i pi k x / L), linear in s between records
    auto force_at = [&](double s, double x) {
        double u = (s - t0) / spacing;
        std::size_t j = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(h.times.size() - 2)));
        const double w1 = std::clamp(u - static_cast<double>(j), 0.0, 1.0);
        std::vector<cplx> ph(nx);
        const double th = two_pi * x / g.L;
        for (std::size_t i = 0; i < nx; ++i) {
            const double a = th * static_cast<double>(g.mode(i));
            ph[i] = {std::cos(a), std::sin(a)};
        }
        const cplx f0 = kern.cdot(h.modes[j].data(), ph.data(), nx);
        const cplx f1 = kern.cdot(h.modes[j + 1].data(), ph.data(), nx);
        return ((1.0 - w1) * f0.real() + w1 * f1.real()) / g.L;
    };

    ScatteringDeviation d;
    d.t = t;
    d.tau = tau;
    d.x.assign(xs.begin(), xs.end());
    d.v.assign(vs.begin(), vs.end());
    d.dx.assign(xs.size(), 0.0);
    d.dv.assign(xs.size(), 0.0);
    const long n = step_count(t - tau, spacing / substeps);
    const double hs = -(spacing / substeps);
    std::vector<char> flag(xs.size(), 0);
    parallel_for(xs.size(), [&](std::size_t i) {
        double X = xs[i] + vs[i] * (t - tau), V = vs[i], s = t;
        for (long step = 0; step < n; ++step) {
            const double k1x = V, k1v = force_at(s, X);
            const double k2x = V + 0.5 * hs * k1v, k2v = force_at(s + 0.5 * hs, X + 0.5 * hs * k1x);
            const double k3x = V + 0.5 * hs * k2v, k3v = force_at(s + 0.5 * hs, X + 0.5 * hs * k2x);
            const double k4x = V + hs * k3v, k4v = force_at(s + hs, X + hs * k3x);
            X += hs / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            V += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            s = t + static_cast<double>(step + 1) * hs;
            if (std::abs(V) > vmax) {
                flag[i] = 1;
                break;
            }
        }
        if (flag[i]) {
            d.dx[i] = d.dv[i] = std::nan("");
            return;
        }
        d.dx[i] = std::remainder(X - xs[i], g.L);
        d.dv[i] = V - vs[i];
    });
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (flag[i]) {
            ++d.flagged;
            continue;
        }
        d.sup_dx = std::max(d.sup_dx, std::abs(d.dx[i]));
        d.sup_dv = std::max(d.sup_dv, std::abs(d.dv[i]));
    }
    return d;
}

} // namespace landau
