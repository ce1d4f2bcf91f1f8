#include "landau/expansions.hpp"

#include "landau/error.hpp"
#include "landau/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Fourier transform of a Maxwellian (T, c): exp(-2 pi^2 T eta^2 - 2 i pi eta c)
cplx maxwellian_tilde(double T, double c, double eta) {
    return std::exp(cplx(-2.0 * pi * pi * T * eta * eta, -2.0 * pi * eta * c));
}

QuadOptions quad_options(double tol) {
    QuadOptions o;
    o.rel_tol = tol;
    o.abs_tol = 1e-15; // profiles are O(1); exact zeros (eta = 0) must terminate
    o.max_intervals = 20000;
    return o;
}

// int_0^Tout dt int_0^t dtau f(t, tau)
cplx double_integral(const std::function<cplx(double, double)>& f, double t_out, double tol, bool& converged) {
    const QuadOptions opt = quad_options(tol);
    auto outer = [&](double t) -> cplx {
        if (t <= 0.0) return 0.0;
        const auto r = integrate_complex([&](double tau) { return f(t, tau); }, 0.0, t, opt);
        converged = converged && r.converged;
        return r.value;
    };
    const auto r = integrate_complex(outer, 0.0, t_out, opt);
    converged = converged && r.converged;
    return r.value;
}

} // namespace

cplx ExpansionConfig::phi_k(long k, double eta) const {
    const long a = std::abs(k);
    if (a == 0 || a > 2) return 0.0;
    const Profile& p = a == 1 ? phi1 : phi2;
    if (!p) return 0.0;
    const cplx v = p(eta);
    return k > 0 ? v : static_cast<double>(sigma) * v;
}

double ExpansionConfig::w(long k) const {
    const long a = std::abs(k);
    return a == 1 ? w1 : a == 2 ? w2 : 0.0;
}

void ExpansionConfig::validate() const {
    if (!(eps >= 0.0) || !(alpha_c >= 0.0) || !std::isfinite(eps) || !std::isfinite(alpha_c))
        throw ConfigError("expansion: eps and alpha_c must be finite and >= 0");
    if (sigma != 1 && sigma != -1) throw ConfigError("expansion: sigma must be +1 or -1");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("expansion: horizon must be positive");
    if (!(tol > 0.0) || tol >= 1e-2) throw ConfigError("expansion: tolerance must lie in (0, 1e-2)");
    if (!std::isfinite(w1) || !std::isfinite(w2)) throw ConfigError("expansion: W coefficients must be finite");
    for (const Profile* p : {&phi, &phi1, &phi2}) {
        if (!*p) continue;
        if (std::abs((*p)(horizon)) > 1e-12 || std::abs((*p)(-horizon)) > 1e-12)
            throw ConfigError("expansion: profile is not below 1e-12 at the horizon; enlarge T_q");
    }
}

U1Series u1_volterra(const ExpansionConfig& cfg, double dt, double T) {
    cfg.validate();
    if (!cfg.phi) throw ConfigError("u1_volterra needs the profile phi");
    if (!(dt > 0.0) || !(T >= 0.0)) throw ConfigError("u1_volterra needs dt > 0 and T >= 0");
    const auto n = static_cast<std::size_t>(std::llround(T / dt));
    U1Series s;
    s.t.resize(n + 1);
    std::vector<double> K(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        const double t = static_cast<double>(m) * dt;
        s.t[m] = t;
        K[m] = -4.0 * pi * pi * cfg.alpha_c * cfg.w1 * std::exp(-pi * t * t) * t;
    }
    auto march = [&](double sign, std::vector<cplx>& u) {
        u.assign(n + 1, 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            cplx acc = 0.5 * cfg.eps * cfg.phi(sign * s.t[j]);
            if (j > 0) {
                cplx conv = 0.5 * K[j] * u[0];
                for (std::size_t m = 1; m < j; ++m) conv += K[m] * u[j - m];
                acc += dt * conv;
            }
            u[j] = acc;
        }
    };
    march(1.0, s.u1);
    march(-1.0, s.um1);
    return s;
}

std::vector<cplx> second_order_limit(const ExpansionConfig& cfg, const std::vector<double>& eta) {
    cfg.validate();
    if (!cfg.phi) throw ConfigError("second_order_limit needs the profile phi");
    const QuadOptions opt = quad_options(cfg.tol);
    const double Tq = cfg.horizon;
    std::vector<cplx> out(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double e = eta[i];
        auto f = [&](double t) { return cfg.phi(t) * cfg.phi(e - t) * (t > 0.0 ? 1.0 : t < 0.0 ? -1.0 : 0.0); };
        auto g = [&](double t) { return std::abs(cfg.phi(t) * cfg.phi(e - t)); };
        const double tail = integrate(g, Tq, 2.0 * Tq, opt).value + integrate(g, -2.0 * Tq, -Tq, opt).value;
        if (tail > 1e-10)
            throw NumericalError("second_order_limit: integrand beyond T_q carries " + std::to_string(tail) +
                                 " (> 1e-10); enlarge the horizon");
        std::vector<double> bp{0.0};
        if (e > -Tq && e < Tq && e != 0.0) bp.push_back(e);
        const auto r = integrate_complex(f, -Tq, Tq, opt, bp);
        out[i] = -cfg.eps * cfg.eps * cfg.alpha_c * pi * pi * cfg.w1 * e * r.value;
    }
    return out;
}

std::vector<cplx> third_order_C(const ExpansionConfig& cfg, const std::vector<double>& eta, PairSet pairs) {
    cfg.validate();
    std::vector<std::pair<long, long>> kl;
    for (long k : {-2L, -1L, 1L, 2L})
        for (long l : {-2L, -1L, 1L, 2L}) {
            if (pairs == PairSet::W1Block && (std::abs(k) != 1 || std::abs(l) != 1)) continue;
            if (pairs == PairSet::Listed && !((k == -1 && l == 1) || (k == 1 && l == -1) || (k == 1 && l == 2) ||
                                               (k == 2 && l == 1) || (k == -1 && l == -2) || (k == -2 && l == -1)))
                continue;
            if (cfg.w(k) * cfg.w(l) != 0.0) kl.emplace_back(k, l);
        }
    const double pref = 16.0 * std::pow(pi, 4) * std::pow(cfg.eps, 3) * cfg.alpha_c * cfg.alpha_c;
    std::vector<cplx> out(eta.size());
    bool converged = true;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double e = eta[i];
        auto f = [&](double t, double tau) {
            cplx s = 0.0;
            for (const auto& [k, l] : kl) {
                const double kd = static_cast<double>(k), ld = static_cast<double>(l);
                const cplx pl = cfg.phi_k(l, ld * tau);
                if (pl == 0.0) continue;
                const cplx a = cfg.phi_k(k - l, kd * t - ld * tau) * cfg.phi_k(-k, e - kd * t) * (kd * ld) * (t - tau);
                const cplx b = cfg.phi_k(k, kd * t) * cfg.phi_k(-k - l, e - kd * t - ld * tau) * ld * (e - kd * (t - tau));
                s += cfg.w(k) * cfg.w(l) * pl * (a + b) * (kd * e);
            }
            return s;
        };
        out[i] = pref * double_integral(f, cfg.horizon + std::abs(e), cfg.tol, converged);
    }
    if (!converged) throw NumericalError("third_order_C: nested quadrature did not reach the tolerance");
    return out;
}

std::vector<cplx> third_order_displayed_block(const ExpansionConfig& cfg, const std::vector<double>& eta) {
    cfg.validate();
    const double pref = -16.0 * std::pow(pi, 4) * std::pow(cfg.eps, 3) * cfg.alpha_c * cfg.alpha_c * cfg.w1 * cfg.w1;
    auto p1 = [&](double x) { return cfg.phi_k(1, x); };
    auto p2 = [&](double x) { return cfg.phi_k(2, x); };
    std::vector<cplx> out(eta.size());
    bool converged = true;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double e = eta[i];
        auto f = [&](double t, double tau) {
            return p1(tau) * p1(e + t) * p2(-t + tau) * (t - tau) + p1(tau) * p1(t) * p2(e + t - tau) * (e + t - tau) +
                   p1(-tau) * p1(e - t) * p2(t + tau) * (t - tau) + p1(-tau) * p1(t) * p2(e - t + tau) * (t - tau - e);
        };
        out[i] = pref * e * double_integral(f, cfg.horizon + std::abs(e), cfg.tol, converged);
    }
    if (!converged) throw NumericalError("third_order_displayed_block: nested quadrature did not reach the tolerance");
    return out;
}

void ExpansionRun::validate() const {
    grid.validate();
    if (std::abs(grid.x.L - 1.0) > 1e-15) throw ConfigError("expansion runs use the unit box");
    if (!(eps >= 0.0) || !(alpha_c >= 0.0)) throw ConfigError("expansion run: eps and alpha_c must be >= 0");
    if (modes.empty()) throw ConfigError("expansion run needs at least one excited mode");
    for (const auto& m : modes)
        if (m.k != 1 && m.k != 2) throw ConfigError("expansion run: excited modes must be 1 or 2");
}

SimConfig ExpansionRun::sim(bool reflected) const {
    validate();
    SimConfig c;
    c.grid = grid;
    c.f0 = VelocityProfile::maxwellian(1.0, 1.0 / (2.0 * pi));
    std::map<long, double> tab{{1, alpha_c * w1}};
    if (w2 != 0.0) tab[2] = alpha_c * w2;
    c.w = Interaction::table(tab);
    for (const auto& m : modes) {
        Perturbation p;
        p.mode = m.k;
        p.amplitude = eps;
        p.phase = odd ? -0.5 * pi : 0.0;
        p.shape = Perturbation::Shape::Maxwellian;
        p.T = m.T;
        p.center = reflected ? -m.center : m.center;
        c.perturbations.push_back(p);
    }
    c.dt = dt;
    c.horizon = T;
    c.cadence = static_cast<std::size_t>(std::max(1L, std::lround(T / dt)));
    c.k_record = 2;
    return c;
}

ExpansionConfig ExpansionRun::expansion() const {
    validate();
    ExpansionConfig e;
    e.eps = eps;
    e.alpha_c = alpha_c;
    e.w1 = w1;
    e.w2 = w2;
    e.sigma = odd ? -1 : 1;
    // cos: (f_i - f0)~(+-k) = eps theta~/2;  sin: (f_i - f0)~(k) = eps theta~/(2i)
    const cplx c = odd ? -0.5 * I : cplx(0.5);
    std::vector<Mode> m1, m2;
    for (const auto& m : modes) (m.k == 1 ? m1 : m2).push_back(m);
    auto sum = [](std::vector<Mode> ms, cplx scale) -> ExpansionConfig::Profile {
        if (ms.empty()) return {};
        return [ms, scale](double eta) {
            cplx s = 0.0;
            for (const auto& m : ms) s += maxwellian_tilde(m.T, m.center, eta);
            return scale * s;
        };
    };
    e.phi = sum(m1, 1.0);
    e.phi1 = sum(m1, c);
    e.phi2 = sum(m2, c);
    double tmax = 0.0;
    for (const auto& m : modes) tmax = std::max(tmax, m.T);
    // exp(-2 pi^2 T eta^2) < 1e-13
    e.horizon = std::sqrt(13.0 * std::log(10.0) / (2.0 * pi * pi * tmax)) + 0.5;
    return e;
}

std::vector<cplx> mean_shift(const ExpansionRun& run, const std::vector<double>& eta, bool reflected) {
    const SimConfig c = run.sim(reflected);
    const DistributionField fi = initial_field(c);
    const SimOutput out = run_simulation(c);
    const DistributionField& ff = out.final_state;
    std::vector<cplx> d(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        // the backward mean is the reflected forward mean composed with v -> -v
        const double e = reflected ? -eta[i] : eta[i];
        d[i] = transform_at(ff, 0, e) - transform_at(fi, 0, e);
    }
    return d;
}

HeteroclinicReport heteroclinic_test(const ExpansionRun& run, const std::vector<double>& eta) {
    run.validate();
    if (eta.empty()) throw ConfigError("heteroclinic test needs an eta grid");
    auto delta = [&](const ExpansionRun& r) {
        const auto fw = mean_shift(r, eta, false), bw = mean_shift(r, eta, true);
        std::vector<cplx> d(eta.size());
        for (std::size_t i = 0; i < eta.size(); ++i) d[i] = fw[i] - bw[i];
        return d;
    };
    auto max_abs = [](const std::vector<cplx>& v) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    };

    HeteroclinicReport rep;
    rep.eta = eta;
    rep.delta = delta(run);
    rep.delta_max = max_abs(rep.delta);

    ExpansionRun fine = run;
    fine.dt = 0.5 * run.dt;
    const auto d_fine = delta(fine);
    for (std::size_t i = 0; i < eta.size(); ++i) rep.noise_floor = std::max(rep.noise_floor, std::abs(rep.delta[i] - d_fine[i]));
    rep.noise_floor = std::max(rep.noise_floor, 1e-12); // roundoff floor of the mean profile
    rep.above_noise = rep.delta_max > rep.noise_floor;
    rep.inconclusive = !rep.above_noise;

    ExpansionRun half = run;
    half.eps = 0.5 * run.eps;
    const double dh = max_abs(delta(half));
    rep.scaling_ratio = dh > 0.0 ? rep.delta_max / dh : 0.0;

    // third order: forward limit C[phi]; backward limit C[phi o S] o S
    const ExpansionConfig cf = run.expansion();
    ExpansionConfig cb = cf;
    if (cf.phi1) cb.phi1 = [p = cf.phi1](double x) { return p(-x); };
    if (cf.phi2) cb.phi2 = [p = cf.phi2](double x) { return p(-x); };
    std::vector<double> neg(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) neg[i] = -eta[i];
    const auto cfw = third_order_C(cf, eta), cbw = third_order_C(cb, neg);
    rep.predicted.resize(eta.size());
    std::size_t star = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        rep.predicted[i] = cfw[i] - cbw[i];
        if (std::abs(rep.predicted[i]) > std::abs(rep.predicted[star])) star = i;
    }
    rep.eta_star = eta[star];
    rep.sign_agrees = std::real(rep.delta[star] * std::conj(rep.predicted[star])) > 0.0;

    std::ostringstream os;
    os << "max|delta| " << rep.delta_max << ", noise " << rep.noise_floor << ", eps-halving ratio " << rep.scaling_ratio
       << ", eta* " << rep.eta_star << (rep.sign_agrees ? ", sign agrees" : ", sign differs");
    if (rep.inconclusive) os << "; signal below the noise floor";
    rep.detail = os.str();
    return rep;
}

} // namespace landau
