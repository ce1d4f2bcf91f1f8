#include "landau/linear.hpp"

#include "landau/error.hpp"
#include "landau/parallel.hpp"
#include "landau/quadrature.hpp"
#include "landau/special.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
constexpr cplx I{0.0, 1.0};

// |f0~(s)| <= sum c s^p exp(a s - b s^2) style envelope term.
struct Envelope {
    double c, p, a, b;
};

// Bound on int_S^inf c s^p exp(a s - b s^2) ds via the log-derivative at S;
// infinite when the integrand is not decreasing there.
double tail_bound(const std::vector<Envelope>& terms, double S) {
    double total = 0.0;
    for (const auto& e : terms) {
        if (e.c == 0.0) continue;
        const double mu = 2.0 * e.b * S - e.a - e.p / S;
        if (!(mu > 0.0)) return INFINITY;
        total += e.c * std::pow(S, e.p) * std::exp(e.a * S - e.b * S * S) / mu;
    }
    return total;
}

// Smallest S (geometric search) with tail below tol.
double tail_cut(const std::vector<Envelope>& terms, double tol, double* bound) {
    double S = 1.0;
    for (int i = 0; i < 400; ++i, S *= 1.15) {
        const double t = tail_bound(terms, S);
        if (t <= tol) {
            *bound = t;
            return S;
        }
    }
    throw NumericalError("laplace transform tail could not be certified");
}

// Envelope of s^p |f0~(s)| e^{gamma' s} with gamma' = 2 pi re.
std::vector<Envelope> envelope(const VelocityProfile& f0, double re, double p) {
    std::vector<Envelope> out;
    if (f0.is_gaussian_mixture()) {
        for (const auto& g : f0.components()) out.push_back({g.weight, p, two_pi * re, 2.0 * pi * pi * g.T});
    } else {
        out.push_back({pi, p, two_pi * (re - f0.lambda0()), 0.0});
    }
    return out;
}

void require_strip(const VelocityProfile& f0, double re) {
    if (!f0.entire() && !(re < f0.lambda0()))
        throw DomainError("Laplace transform diverges: Re xi must stay below the analyticity width");
}

// Breakpoints so that each quadrature panel holds about one oscillation.
std::vector<double> panels(const VelocityProfile& f0, double im_rate, double S) {
    double freq = std::abs(im_rate);
    if (f0.is_gaussian_mixture())
        for (const auto& g : f0.components()) freq = std::max(freq, std::abs(im_rate) + std::abs(g.center));
    const double width = std::min(0.5, 1.0 / std::max(freq, 1e-300));
    const int n = std::min(2000, static_cast<int>(S / width));
    std::vector<double> bp;
    bp.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 1; i < n; ++i) bp.push_back(S * i / n);
    return bp;
}

// int_0^inf exp(2 pi zeta s) f0~(sigma s) s^p ds, with the tail bound.
std::pair<cplx, double> moment_quadrature(const VelocityProfile& f0, cplx zeta, int sigma, int p) {
    require_strip(f0, zeta.real());
    double bound = 0.0;
    const double S = tail_cut(envelope(f0, zeta.real(), p), 1e-16, &bound);
    const cplx rate = two_pi * zeta;
    auto f = [&](double s) { return std::exp(rate * s) * f0.f0_tilde(sigma * s) * std::pow(s, p); };
    QuadOptions opt;
    opt.abs_tol = 1e-16;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 20000;
    const auto r = integrate_complex(f, 0.0, S, opt, panels(f0, zeta.imag(), S));
    return {r.value, bound + r.error};
}

int sign_of(long k) { return k < 0 ? -1 : 1; }

// Same moments in closed form. Gaussian component (weight c, center m, variance T):
// int_0^inf s^p e^{z s - b s^2} ds with z = 2 pi zeta - 2 i pi sigma m, b = 2 pi^2 T, from
// E0 = (1/2) sqrt(pi/b) w(-i z / (2 sqrt b)), J1 = (1 + z E0)/(2b), J2 = (E0 + z J1)/(2b).
// Cauchy: pi int_0^inf s^p e^{-2 pi (1 - zeta) s} ds = pi p! / (2 pi (1 - zeta))^{p+1}.
cplx moment_closed(const VelocityProfile& f0, cplx zeta, int sigma, int p) {
    require_strip(f0, zeta.real());
    if (!f0.is_gaussian_mixture()) {
        const cplx d = two_pi * (f0.lambda0() - zeta);
        return p == 1 ? pi / (d * d) : 2.0 * pi / (d * d * d);
    }
    cplx acc = 0.0;
    for (const auto& g : f0.components()) {
        const double b = 2.0 * pi * pi * g.T, rb = std::sqrt(b);
        const cplx z = two_pi * zeta - two_pi * I * (sigma * g.center);
        const cplx e0 = 0.5 * std::sqrt(pi) / rb * faddeeva(-I * z / (2.0 * rb));
        const cplx j1 = (1.0 + z * e0) / (2.0 * b);
        acc += g.weight * (p == 1 ? j1 : (e0 + z * j1) / (2.0 * b));
    }
    return acc;
}


// d/ds f0~(sigma s), s >= 0.
cplx tilde_slope(const VelocityProfile& f0, int sigma, double s) {
    if (!f0.is_gaussian_mixture()) return -two_pi * pi * std::exp(-two_pi * s);
    cplx acc = 0.0;
    const double eta = sigma * s;
    for (const auto& g : f0.components()) {
        const cplx v = g.weight * std::exp(cplx(-2.0 * pi * pi * g.T * eta * eta, -two_pi * g.center * eta));
        acc += (-two_pi * I * g.center - 4.0 * pi * pi * g.T * eta) * v;
    }
    return static_cast<double>(sigma) * acc;
}

// int_0^inf s e^{a s - b s^2} ds in closed form (b > 0).
double gauss_first_moment(double a, double b) {
    const double rb = std::sqrt(b);
    return 1.0 / (2.0 * b) + a / (2.0 * b) * 0.5 * std::sqrt(pi) / rb * std::exp(a * a / (4.0 * b)) *
                                 std::erfc(-a / (2.0 * rb));
}

struct WRange {
    double max_pos = 0.0; // max(0, max_k W)
    double min_neg = 0.0; // min(0, min_k W)
    double max_abs = 0.0;
    long argmax_abs = 0;
};

// Extremes of W^(L)(k) over k >= 1, scanning until C_W (L/k)^{1+gamma} cannot matter.
WRange scan_w(const Interaction& w, double L) {
    WRange r;
    const double cw = w.c_w();
    for (long k = 1; k <= 1000000; ++k) {
        const double v = w.w_hat_L(k, L);
        r.max_pos = std::max(r.max_pos, v);
        r.min_neg = std::min(r.min_neg, v);
        if (std::abs(v) > r.max_abs) {
            r.max_abs = std::abs(v);
            r.argmax_abs = k;
        }
        const double beyond = cw * std::pow(L / static_cast<double>(k + 1), 1.0 + w.gamma());
        if (beyond <= 1e-14 * std::max(r.max_abs, 1e-300) || beyond == 0.0) break;
        if (k >= 64 && beyond < 1e-3 * r.max_abs) break;
    }
    return r;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace

std::string_view to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "inconclusive";
    }
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    default: return "inconclusive";
    }
}

cplx kernel_K0(const LinearSetup& s, double t, long k) {
    if (k == 0 || t == 0.0) return 0.0;
    const double q = static_cast<double>(k) / s.L;
    return -4.0 * pi * pi * s.w.w_hat_L(k, s.L) * s.f0.f0_tilde(q * t) * q * q * t;
}

cplx laplace_L(const LinearSetup& s, cplx xi, long k) {
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return 0.0;
    return -4.0 * pi * pi * w * moment_closed(s.f0, std::conj(xi), sign_of(k), 1);
}

QuadLaplace laplace_L_quadrature(const LinearSetup& s, cplx xi, long k) {
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return {};
    const auto [m, err] = moment_quadrature(s.f0, std::conj(xi), sign_of(k), 1);
    return {-4.0 * pi * pi * w * m, 4.0 * pi * pi * std::abs(w) * err};
}

LaplaceValue laplace_L_derivative(const LinearSetup& s, cplx xi, long k) {
    LaplaceValue out{0.0, 0.0};
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return out;
    const double c = -4.0 * pi * pi * w;
    out.value = c * moment_closed(s.f0, std::conj(xi), sign_of(k), 1);
    out.d_dzeta = c * two_pi * moment_closed(s.f0, std::conj(xi), sign_of(k), 2);
    return out;
}

double laplace_decay_constant(const LinearSetup& s, double gamma, long k) {
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return 0.0;
    require_strip(s.f0, gamma);
    const int sigma = sign_of(k);
    // |d/ds (s f0~(sigma s))| <= sum w (1 + 2 pi |c| s + 4 pi^2 T s^2) e^{-b s^2} (Cauchy: pi (1 + 2 pi s) e^{-2 pi s})
    std::vector<Envelope> env;
    if (s.f0.is_gaussian_mixture()) {
        for (const auto& g : s.f0.components()) {
            const double b = 2.0 * pi * pi * g.T, a = two_pi * gamma;
            env.push_back({g.weight, 0.0, a, b});
            env.push_back({g.weight * two_pi * std::abs(g.center), 1.0, a, b});
            env.push_back({g.weight * 4.0 * pi * pi * g.T, 2.0, a, b});
        }
    } else {
        const double a = two_pi * (gamma - s.f0.lambda0());
        env.push_back({pi, 0.0, a, 0.0});
        env.push_back({pi * two_pi, 1.0, a, 0.0});
    }
    double bound = 0.0;
    const double S = tail_cut(env, 1e-14, &bound);
    auto f = [&](double x) {
        return std::exp(two_pi * gamma * x) * std::abs(s.f0.f0_tilde(sigma * x) + x * tilde_slope(s.f0, sigma, x));
    };
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-10;
    const auto r = integrate(f, 0.0, S, opt, panels(s.f0, 0.0, S));
    return 4.0 * pi * pi * std::abs(w) * (r.value + r.error + bound);
}

double laplace_root_radius(const LinearSetup& s, double gamma, long k) {
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return 0.0;
    const double r1 = laplace_decay_constant(s, gamma, k) / two_pi;
    // Second integration by parts: |L| <= 4 pi^2 |W| (|g'(0)| + int e^{2 pi gamma s} |g''|) / (2 pi |xi|)^2, g = s f0~(sigma s).
    const int sigma = sign_of(k);
    std::vector<Envelope> env;
    if (s.f0.is_gaussian_mixture()) {
        for (const auto& g : s.f0.components()) {
            const double b = 2.0 * pi * pi * g.T, a = two_pi * gamma, c = two_pi * std::abs(g.center);
            const double q = 4.0 * pi * pi * g.T;
            env.push_back({g.weight * 2.0 * c, 0.0, a, b});
            env.push_back({g.weight * (2.0 * q + c * c + q), 1.0, a, b});
            env.push_back({g.weight * 2.0 * c * q, 2.0, a, b});
            env.push_back({g.weight * q * q, 3.0, a, b});
        }
    } else {
        const double a = two_pi * (gamma - s.f0.lambda0());
        env.push_back({pi * 2.0 * two_pi, 0.0, a, 0.0});
        env.push_back({pi * two_pi * two_pi, 1.0, a, 0.0});
    }
    double bound = 0.0;
    const double S = tail_cut(env, 1e-14, &bound);
    auto curv = [&](double x) {
        const double eta = sigma * x;
        cplx d1 = 0.0, d2 = 0.0;
        if (s.f0.is_gaussian_mixture()) {
            for (const auto& g : s.f0.components()) {
                const cplx v = g.weight * std::exp(cplx(-2.0 * pi * pi * g.T * eta * eta, -two_pi * g.center * eta));
                const cplx P = -two_pi * I * g.center - 4.0 * pi * pi * g.T * eta;
                d1 += P * v;
                d2 += (P * P - 4.0 * pi * pi * g.T) * v;
            }
        } else {
            d1 = -two_pi * pi * std::exp(-two_pi * x) * static_cast<double>(sigma);
            d2 = two_pi * two_pi * pi * std::exp(-two_pi * x);
        }
        return std::exp(two_pi * gamma * x) * std::abs(2.0 * sigma * d1 + x * d2);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-10;
    const auto r = integrate(curv, 0.0, S, opt, panels(s.f0, 0.0, S));
    const double m2 = 4.0 * pi * pi * std::abs(w) * (std::abs(s.f0.f0_tilde(0.0)) + r.value + r.error + bound);
    return std::min(r1, std::sqrt(m2) / two_pi);
}

double laplace_modulus_bound(const LinearSetup& s, double gamma, long k) {
    const double w = k == 0 ? 0.0 : s.w.w_hat_L(k, s.L);
    if (w == 0.0) return 0.0;
    require_strip(s.f0, gamma);
    double m = 0.0;
    if (s.f0.is_gaussian_mixture()) {
        for (const auto& g : s.f0.components()) m += g.weight * gauss_first_moment(two_pi * gamma, 2.0 * pi * pi * g.T);
    } else {
        const double d = two_pi * (s.f0.lambda0() - gamma);
        m = pi / (d * d);
    }
    return 4.0 * pi * pi * std::abs(w) * m;
}

CriterionResult criterion_smallness(const LinearSetup& s) {
    const WRange wr = scan_w(s.w, s.L);
    double bound = 0.0;
    const double S = tail_cut(envelope(s.f0, 0.0, 1.0), 1e-15, &bound);
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;
    const auto r = integrate([&](double x) { return std::abs(s.f0.f0_tilde(x)) * x; }, 0.0, S, opt, panels(s.f0, 0.0, S));
    CriterionResult out;
    out.value = 4.0 * pi * pi * wr.max_abs * (r.value + bound);
    out.status = out.value < 1.0 ? Status::Pass : Status::Fail;
    out.detail = "4pi^2 max|W| int|f0~|r dr = " + fmt(out.value) + " (max at k=" + std::to_string(wr.argmax_abs) + ")";
    return out;
}

CriterionResult criterion_monotone(const LinearSetup& s) {
    CriterionResult out;
    const WRange wr = scan_w(s.w, s.L);
    if (wr.min_neg < 0.0) {
        out.status = Status::Fail;
        out.value = wr.min_neg;
        out.detail = "interaction not repulsive: min W^(L) = " + fmt(wr.min_neg);
        return out;
    }
    // v phi'(v) < 0 away from 0; phi_{-k}(v) = phi_k(-v) leaves the condition unchanged.
    const auto& f0 = s.f0;
    double vmax = 50.0;
    if (f0.is_gaussian_mixture()) {
        vmax = 0.0;
        for (const auto& g : f0.components()) vmax = std::max(vmax, std::abs(g.center) + 12.0 * std::sqrt(g.T));
    }
    const int n = 4000;
    double worst = -INFINITY;
    for (int i = -n; i <= n; ++i) {
        if (i == 0) continue;
        const double v = vmax * i / n;
        worst = std::max(worst, v * f0.f0_prime(v));
    }
    out.value = worst;
    out.status = worst < 0.0 ? Status::Pass : Status::Fail;
    out.detail = worst < 0.0 ? "repulsive and strictly decreasing in |v|"
                              : "marginal not decreasing in |v| (max v phi' = " + fmt(worst) + ")";
    return out;
}

CriticalPoints critical_points(const Marginal& m) {
    CriticalPoints out;
    const auto& f0 = m.profile;
    double lo = -50.0, hi = 50.0;
    if (f0.is_gaussian_mixture()) {
        lo = INFINITY;
        hi = -INFINITY;
        for (const auto& g : f0.components()) {
            const double c = m.direction * g.center, r = 12.0 * std::sqrt(g.T);
            lo = std::min(lo, c - r);
            hi = std::max(hi, c + r);
        }
    }
    const int n = 8001;
    std::vector<double> v(n), d(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * i / (n - 1);
        d[i] = m.phi_prime(v[i]);
        scale = std::max(scale, std::abs(d[i]));
    }
    auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
    boost::math::tools::eps_tolerance<double> tol(52);
    for (int i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            // exact zero on a node: a crossing if the neighbours disagree, degenerate otherwise
            const int l = i > 0 ? sgn(d[i - 1]) : 0, r = sgn(d[i + 1]);
            if (l != 0 && r != 0 && l != r) out.points.push_back(v[i]);
            else out.inconclusive = true;
            continue;
        }
        if (sgn(d[i]) * sgn(d[i + 1]) < 0) {
            std::uintmax_t it = 100;
            const auto br = boost::math::tools::toms748_solve([&](double x) { return m.phi_prime(x); }, v[i], v[i + 1],
                                                              d[i], d[i + 1], tol, it);
            out.points.push_back(0.5 * (br.first + br.second));
        } else if (i > 0 && std::abs(d[i]) < 1e-9 * scale && std::abs(d[i]) <= std::abs(d[i - 1]) &&
                   std::abs(d[i]) <= std::abs(d[i + 1]) && sgn(d[i - 1]) == sgn(d[i + 1])) {
            out.inconclusive = true; // touching zero: cannot bracket
        }
    }
    return out;
}

double principal_value(const Marginal& m, double w, double h) {
    auto g = [&](double u) { return (m.phi_prime(w + u) - m.phi_prime(w - u)) / u; };
    const auto& f0 = m.profile;
    std::vector<double> bp;
    double R;
    if (f0.is_gaussian_mixture()) {
        double reach = 0.0;
        for (const auto& c : f0.components()) {
            const double dist = std::abs(m.direction * c.center - w);
            reach = std::max(reach, dist + 40.0 * std::sqrt(c.T));
            if (dist > h) bp.push_back(dist);
        }
        R = reach;
    } else {
        R = 1e6;
        for (double x = 2.0 * h; x < R; x *= 2.0) bp.push_back(x);
    }
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;
    opt.max_intervals = 20000;
    const auto r = integrate(g, h, R, opt, bp);
    return 2.0 * h * m.phi_second(w) + r.value;
}

CriterionResult criterion_penrose(const LinearSetup& s) {
    CriterionResult out;
    const WRange wr = scan_w(s.w, s.L);
    // All k > 0 share phi_k = f0 and k < 0 mirrors it with the same p.v. values.
    const Marginal m = marginal(s.f0, 1);
    const CriticalPoints cp = critical_points(m);
    double worst = -INFINITY, at = 0.0;
    for (double w : cp.points) {
        const double p = principal_value(m, w);
        const double v = std::max(wr.max_pos * p, wr.min_neg * p);
        if (v > worst) {
            worst = v;
            at = w;
        }
    }
    out.value = worst;
    if (cp.inconclusive || cp.points.empty()) {
        out.status = Status::Inconclusive;
        out.detail = "critical points of the marginal could not be bracketed";
        return out;
    }
    out.status = worst < 1.0 ? Status::Pass : Status::Fail;
    out.detail = "max W p.v. int phi'/(v-w) = " + fmt(worst) + " at w=" + fmt(at);
    return out;
}

StabilityReport check_condition_L(const LinearSetup& s, const ScanOptions& opt) {
    if (!(opt.lambda > 0.0) || opt.n_gamma < 1 || opt.n_omega < 3 || opt.k_max < 1)
        throw ConfigError("condition (L) scan needs lambda > 0, n_gamma >= 1, n_omega >= 3, k_max >= 1");
    StabilityReport rep;
    rep.lambda_scan = opt.lambda;
    rep.smallness = criterion_smallness(s);
    rep.monotone = criterion_monotone(s);
    rep.penrose = criterion_penrose(s);

    const double gmax = opt.lambda * (opt.n_gamma - 1) / opt.n_gamma;
    // Modes whose transform provably stays inside the disc of radius 1 - kappa need no scan.
    std::vector<long> ks;
    double certified = 1.0; // |L - 1| >= 1 - |L| on the modes skipped
    for (long k = 1; k <= opt.k_max; ++k) {
        const double b = laplace_modulus_bound(s, gmax, k);
        if (b > 1.0 - opt.kappa_tol) ks.push_back(k);
        else certified = std::min(certified, 1.0 - b);
    }
    {
        const double J = laplace_modulus_bound(s, gmax, 1) / std::max(std::abs(s.w.w_hat_L(1, s.L)), 1e-300);
        const double beyond = s.w.c_w() * std::pow(s.L / static_cast<double>(opt.k_max + 1), 1.0 + s.w.gamma());
        if (std::isfinite(J) && s.w.w_hat_L(1, s.L) != 0.0 && beyond * J > 1.0 - opt.kappa_tol) rep.coarse = true;
    }
    rep.kappa_min = certified;
    rep.worst_k = 1;
    rep.worst_xi = 0.0;
    for (long k : ks) rep.omega_max = std::max(rep.omega_max, laplace_decay_constant(s, gmax, k) / (two_pi * (1.0 - opt.kappa_tol)));

    const std::size_t rows = ks.size() * static_cast<std::size_t>(opt.n_gamma);
    std::vector<std::vector<double>> kappa(rows, std::vector<double>(static_cast<std::size_t>(opt.n_omega)));
    auto xi_at = [&](int gi, int oj) {
        const double g = opt.lambda * gi / opt.n_gamma;
        const double om = -rep.omega_max + 2.0 * rep.omega_max * oj / (opt.n_omega - 1);
        return cplx(g, om);
    };
    parallel_for(rows, [&](std::size_t r) {
        const long k = ks[r / opt.n_gamma];
        const int gi = static_cast<int>(r % opt.n_gamma);
        for (int j = 0; j < opt.n_omega; ++j) kappa[r][j] = std::abs(laplace_L(s, xi_at(gi, j), k) - 1.0);
    });
    for (std::size_t r = 0; r < rows; ++r) {
        for (int j = 0; j < opt.n_omega; ++j) {
            const double v = kappa[r][j];
            if (v < rep.kappa_min) {
                rep.kappa_min = v;
                rep.worst_k = ks[r / opt.n_gamma];
                rep.worst_xi = xi_at(static_cast<int>(r % opt.n_gamma), j);
            }
            if (j > 0 && std::abs(v - kappa[r][j - 1]) > opt.kappa_tol) rep.coarse = true;
            if (r % opt.n_gamma > 0 && std::abs(v - kappa[r - 1][j]) > opt.kappa_tol) rep.coarse = true;
        }
    }

    if (opt.growth_search) {
        for (long k = 1; k <= opt.k_max && !rep.growing; ++k) {
            if (laplace_modulus_bound(s, 0.0, k) < 1.0) continue; // |L| < 1 on Re xi <= 0: no root there
            const double R = laplace_root_radius(s, 0.0, k) * (1.0 + 1e-6);
            RootSearchBox box{-R, 0.0, -R, R, 16, 32};
            for (const auto& root : dispersion_roots(s, k, box)) {
                if (root.growth_rate > 0.0) {
                    rep.growing = root;
                    break;
                }
            }
        }
    }

    if (rep.growing) {
        rep.kappa_min = rep.growing->residual;
        rep.worst_k = rep.growing->k;
        rep.worst_xi = *rep.growing->xi;
        rep.verdict = Verdict::Unstable;
    } else if (rep.kappa_min <= opt.kappa_tol) {
        rep.verdict = Verdict::Unstable;
    } else if (rep.coarse) {
        rep.verdict = Verdict::Inconclusive;
    } else {
        rep.verdict = Verdict::Stable;
    }
    return rep;
}

} // namespace landau
