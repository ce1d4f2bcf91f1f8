#include "landau/kernels.hpp"

#include "landau/error.hpp"
#include "landau/quadrature.hpp"
#include "landau/simd/kernels.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace landau {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double pen(double j, double gamma, bool on) { return on ? std::log1p(std::pow(j, gamma)) : 0.0; }

// log sup over k, l != 0 of -a|l| - b|k-l| - a|k s + l tau| - pen(|k-l|), s = t - tau.
// By the symmetry (k,l) -> (-k,-l) only l >= 1 is scanned. For fixed l, with j = k - l, the
// exponent is -a l - b|j| - a|l t + j s| - pen(|j|); outside the interval between 0 and
// j* = -l t / s every part decreases away from it, and inside it the exponent is
// (a s - b)|j| - pen(|j|) + const, which has no interior maximum beyond |j| = 3 (pen' is
// unimodal with its peak below 1.5). The candidates are therefore |j| <= 3, the integers around
// j*, and the neighbours of the excluded j = -l (k = 0). The scan over l stops once -a l cannot
// beat the running best, or falls below `floor`.
double log_sup_exact(double t, double tau, double a, double b, double gamma, bool penalty, double floor) {
    const double s = t - tau;
    double small[5];
    for (int j = 0; j < 5; ++j) small[j] = pen(j, gamma, penalty);
    double best = neg_inf;
    auto consider = [&](double l, double j) {
        if (j == -l) return;
        const double aj = std::fabs(j);
        const double p = aj < 5.0 ? small[static_cast<int>(aj)] : pen(aj, gamma, penalty);
        const double e = -a * l - b * aj - a * std::fabs(l * t + j * s) - p;
        best = std::max(best, e);
    };
    for (long li = 1;; ++li) {
        const double l = static_cast<double>(li);
        if (-a * l <= best || -a * l < floor) break;
        for (int j = -3; j <= 3; ++j) consider(l, j);
        consider(l, -l - 1.0);
        consider(l, -l + 1.0);
        if (s > 0.0) {
            const double js = -l * t / s;
            if (std::fabs(js) < 1e15) {
                const double f = std::floor(js);
                for (int d = -1; d <= 2; ++d) consider(l, f + d);
            }
        }
    }
    return best;
}

bool uses_penalty(KernelFamily f) { return f != KernelFamily::Kbar; }

double decay_b(KernelFamily f, double t, double tau, double alpha) {
    if (f == KernelFamily::Kbar) return alpha;
    return t > 0.0 ? alpha * (t - tau) / t : 0.0;
}

void check_times(double t, double tau, bool need_positive) {
    if (!(tau >= 0.0) || !(tau <= t) || !std::isfinite(t))
        throw DomainError("kernel needs 0 <= tau <= t (got t = " + std::to_string(t) + ", tau = " + std::to_string(tau) +
                          ")");
    if (need_positive && !(t > 0.0)) throw DomainError("kernel with the (t - tau)/t factor needs t > 0");
}

void check_alpha_gamma(double alpha, double gamma) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("kernel alpha must be positive");
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("kernel gamma must be >= 1");
}

// log K(t,tau) with terms below exp(floor) ignored (floor = -inf: exact).
double log_kernel(const KernelSpec& sp, double t, double tau, double floor) {
    const double b = decay_b(sp.family, t, tau, sp.alpha);
    const double lf = floor - std::log1p(tau);
    double e;
    if (sp.k_max > 0) {
        e = std::log(kernel_truncated(sp.family, t, tau, sp.alpha, sp.gamma, sp.k_max) / (1.0 + tau));
    } else {
        e = log_sup_exact(t, tau, sp.alpha, b, sp.gamma, uses_penalty(sp.family), lf);
    }
    return std::log1p(tau) + e;
}

// Resonance location and the log of its spike height and width-weighted mass, for the pair
// (k, -m), k, m >= 1, on the tau axis at fixed t.
struct Spike {
    double where;
    double log_mass;
};

// Spikes on [0, t] in tau (dual = false) or on [tau, inf) in t (dual = true).
// Pairs whose estimated contribution is below 1e-13 of the largest are left to adaptivity.
std::vector<double> resonance_breakpoints(const KernelSpec& sp, double eps, double t, double tau, bool dual,
                                          double weight_scale) {
    const double a = sp.alpha;
    const long cap_m = sp.k_max > 0 ? sp.k_max : static_cast<long>(std::ceil(40.0 / a)) + 1;
    std::vector<Spike> spikes;
    for (long m = 1; m <= cap_m; ++m) {
        const double dm = static_cast<double>(m);
        const double anchor = dual ? tau : t;
        // spikes stay isolated while their width 1/(a k) is below the spacing between neighbours
        const double iso = dual ? a * dm * tau : a * dm * t;
        const long cap_k = sp.k_max > 0 ? sp.k_max : static_cast<long>(std::min(2.0 * iso + 8.0, 1e5));
        for (long k = 1; k <= cap_k; ++k) {
            const double dk = static_cast<double>(k), j = dk + dm;
            const double where = dual ? tau * j / dk : t * dk / j;
            const double lw = dual ? -eps * (where - tau) : -eps * (t - where);
            const double height = sp.family == KernelFamily::Kbar ? -a * dm - a * j : -2.0 * a * dm - std::log1p(std::pow(j, sp.gamma));
            const double width = dual ? 1.0 / (a * dk) : 1.0 / (a * j);
            spikes.push_back({where, std::log1p(dual ? tau : where) + height + weight_scale * lw + std::log(width)});
            (void)anchor;
        }
    }
    double top = neg_inf;
    for (const auto& s : spikes) top = std::max(top, s.log_mass);
    std::vector<double> out;
    for (const auto& s : spikes)
        if (s.log_mass > top - 20.0) out.push_back(s.where);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QuadOptions moment_options() {
    QuadOptions o;
    o.abs_tol = 0.0;
    o.rel_tol = 1e-8;
    o.max_intervals = 400000;
    return o;
}

void check_eps(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("moment weight eps must lie in (0, 1)");
}

// sum_{j} of int_0^1 s^n e^{z s} ds for n = 0, 1, 2 with z <= 0.
double phi_n(int n, double z) {
    if (std::fabs(z) < 1.0) {
        double sum = 0.0, term = 1.0;
        for (int j = 0; j < 40; ++j) {
            if (j > 0) term *= z / j;
            sum += term / (n + j + 1);
        }
        return sum;
    }
    double p = std::expm1(z) / z;
    for (int i = 1; i <= n; ++i) p = (std::exp(z) - i * p) / z;
    return p;
}

// int_a^b P(tau) e^{E(tau)} dtau with E linear (E(a) = ea, E(b) = eb) and P(tau) = (1+tau)^pow.
double piece_integral(double a, double b, double ea, double eb, int pow) {
    const double h = b - a;
    if (h <= 0.0) return 0.0;
    // anchor at the larger end so the exponent only decreases along u in [0, h]
    const bool left = ea >= eb;
    const double e0 = left ? ea : eb, z = -std::fabs(eb - ea);
    const double p0 = 1.0 + (left ? a : b), dir = left ? 1.0 : -1.0;
    // (p0 + dir u)^pow with u = h s
    double acc = 0.0;
    if (pow == 1) acc = p0 * phi_n(0, z) + dir * h * phi_n(1, z);
    else acc = p0 * p0 * phi_n(0, z) + 2.0 * p0 * dir * h * phi_n(1, z) + h * h * phi_n(2, z);
    return std::exp(e0) * h * acc;
}

} // namespace

std::string_view to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::Kbar: return "Kbar";
    case KernelFamily::Kgamma: return "Kgamma";
    case KernelFamily::Kmode: return "Kmode";
    }
    return "?";
}

KernelFamily kernel_family_from_string(std::string_view s) {
    if (s == "Kbar") return KernelFamily::Kbar;
    if (s == "Kgamma") return KernelFamily::Kgamma;
    if (s == "Kmode") return KernelFamily::Kmode;
    throw ConfigError("unknown kernel family '" + std::string(s) + "' (Kbar, Kgamma, Kmode)");
}

void KernelSpec::validate() const {
    check_alpha_gamma(alpha, gamma);
    if (k_max < 0 || k_max > 4096) throw ConfigError("kernel K_max must lie in [0, 4096]");
}

double kernel_Kbar(double t, double tau, double alpha) {
    check_alpha_gamma(alpha, 1.0);
    check_times(t, tau, false);
    return (1.0 + tau) * std::exp(log_sup_exact(t, tau, alpha, alpha, 1.0, false, neg_inf));
}

double kernel_Kgamma(double t, double tau, double alpha, double gamma) {
    check_alpha_gamma(alpha, gamma);
    check_times(t, tau, true);
    return (1.0 + tau) * std::exp(log_sup_exact(t, tau, alpha, alpha * (t - tau) / t, gamma, true, neg_inf));
}

double kernel_Kmode(long k, long l, double t, double tau, double alpha, double gamma) {
    check_alpha_gamma(alpha, gamma);
    check_times(t, tau, true);
    if (k == 0 || l == 0) throw DomainError("mode kernel needs k, l != 0");
    const double j = std::fabs(static_cast<double>(k - l));
    const double e = -alpha * std::fabs(static_cast<double>(l)) - alpha * (t - tau) / t * j -
                     alpha * std::fabs(static_cast<double>(k) * (t - tau) + static_cast<double>(l) * tau);
    return (1.0 + tau) * std::exp(e) / (1.0 + std::pow(j, gamma));
}

double kernel_truncated(KernelFamily family, double t, double tau, double alpha, double gamma, int k_max) {
    if (family == KernelFamily::Kmode) throw ConfigError("truncated lattice sup is defined for Kbar and Kgamma");
    check_alpha_gamma(alpha, gamma);
    check_times(t, tau, family == KernelFamily::Kgamma);
    if (k_max < 1) throw ConfigError("lattice truncation needs K_max >= 1");
    const bool penalty = uses_penalty(family);
    std::vector<double> pn(2 * static_cast<std::size_t>(k_max) + 1);
    for (std::size_t j = 0; j < pn.size(); ++j) pn[j] = pen(static_cast<double>(j), gamma, penalty);
    const double b = decay_b(family, t, tau, alpha), s = t - tau;
    const auto& kt = simd::kernels();
    double best = neg_inf;
    for (long k = 1; k <= k_max; ++k)
        best = std::max(best, kt.lattice_max(k, static_cast<double>(k) * s, tau, alpha, b, pn.data(), -k_max, k_max));
    return (1.0 + tau) * std::exp(best);
}

double kernel_value(const KernelSpec& spec, double t, double tau) {
    spec.validate();
    if (spec.family == KernelFamily::Kmode) throw ConfigError("Kmode needs explicit (k, l); use kernel_Kmode");
    if (spec.k_max > 0) return kernel_truncated(spec.family, t, tau, spec.alpha, spec.gamma, spec.k_max);
    return spec.family == KernelFamily::Kbar ? kernel_Kbar(t, tau, spec.alpha)
                                             : kernel_Kgamma(t, tau, spec.alpha, spec.gamma);
}

namespace {

MomentValue moment(const KernelSpec& spec, double eps, double t, int power) {
    spec.validate();
    if (spec.family == KernelFamily::Kmode) throw ConfigError("moments of Kmode are computed by mode_moments");
    check_eps(eps);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("moment time must be positive");
    const double p = power;
    const auto bp = resonance_breakpoints(spec, eps, t, 0.0, false, p);
    // integrand values below 1e-18 of this scale are not resolved
    const double scale = p * (std::log1p(t / 2.0) - 3.0 * spec.alpha - std::log1p(std::pow(2.0, spec.gamma)) - eps * t / 2.0);
    auto f = [&](double tau) {
        const double w = p * eps * (tau - t);
        const double lk = log_kernel(spec, t, tau, (scale - 41.0 - w) / p);
        return std::exp(p * lk + w);
    };
    const auto q = integrate(f, 0.0, t, moment_options(), bp);
    MomentValue out;
    out.value = power == 2 ? std::sqrt(q.value) : q.value;
    out.error = power == 2 ? q.error / (2.0 * std::max(out.value, 1e-300)) : q.error;
    out.resolved = q.converged;
    out.breakpoints = static_cast<int>(bp.size());
    return out;
}

} // namespace

MomentValue exp_moment(const KernelSpec& spec, double eps, double t) { return moment(spec, eps, t, 1); }

MomentValue l2_exp_moment(const KernelSpec& spec, double eps, double t) { return moment(spec, eps, t, 2); }

DualMoment dual_moment(const KernelSpec& spec, double eps, double t_cap, const std::vector<double>& tau_grid) {
    spec.validate();
    if (spec.family == KernelFamily::Kmode) throw ConfigError("dual moments of Kmode are computed by mode_moments");
    check_eps(eps);
    if (tau_grid.empty()) throw ConfigError("dual moment needs a nonempty tau grid");
    DualMoment out;
    out.value = neg_inf;
    for (double tau : tau_grid) {
        if (!(tau >= 0.0) || !(tau < t_cap)) throw ConfigError("dual moment tau grid must lie in [0, t_cap)");
        const auto bp = resonance_breakpoints(spec, eps, 0.0, tau, true, 1.0);
        auto f = [&](double t) {
            if (t <= 0.0) return 0.0;
            const double w = eps * (tau - t);
            return std::exp(log_kernel(spec, t, tau, std::log1p(tau) - 45.0 - w - 3.0 * spec.alpha) + w);
        };
        const auto q = integrate(f, tau, t_cap, moment_options(), bp);
        // beyond t_cap: K <= (1+tau) e^{-alpha t/(4 max(tau,1))} once t >= 2 tau, else K <= 1 + tau
        double tail;
        if (t_cap >= 2.0 * tau) {
            const double c = eps + spec.alpha / (4.0 * std::max(tau, 1.0));
            tail = (1.0 + tau) * std::exp(eps * tau - c * t_cap) / c;
        } else {
            tail = (1.0 + tau) * std::exp(-eps * (t_cap - tau)) / eps;
        }
        const double v = q.value + tail;
        out.resolved = out.resolved && q.converged;
        if (v > out.value) {
            out.value = v;
            out.tau_at_sup = tau;
            out.tail_bound = tail;
        }
    }
    return out;
}

ModeMoments mode_moments(double alpha, double gamma, double eps, double t, long k_max,
                         const std::vector<double>& tau_grid) {
    check_alpha_gamma(alpha, gamma);
    check_eps(eps);
    if (!(eps < alpha / 4.0)) throw ConfigError("mode moments need eps < alpha / 4");
    if (!(t > 0.0)) throw DomainError("moment time must be positive");
    if (k_max < 1) throw ConfigError("mode moments need k_max >= 1");
    for (double tau : tau_grid)
        if (!(tau >= 0.0)) throw ConfigError("mode moment tau grid must be nonnegative");
    // e^{-alpha |l|} decay: |l| beyond lmax changes the sums below double precision
    const long lmax = static_cast<long>(std::ceil(42.0 / alpha)) + 1;
    ModeMoments out;
    for (long k = 1; k <= k_max; ++k) {
        const double dk = static_cast<double>(k);
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (long l = -lmax; l <= lmax; ++l) {
            if (l == 0) continue;
            const double dl = static_cast<double>(l), j = std::fabs(dk - dl);
            const double c = -alpha * std::fabs(dl) - std::log1p(std::pow(j, gamma));
            // log of K_kl(t,tau) e^{eps(tau - t)} / (1 + tau): linear on each side of the resonance
            auto expo = [&](double tau) {
                return c - alpha * (t - tau) / t * j - alpha * std::fabs(dk * (t - tau) + dl * tau) + eps * (tau - t);
            };
            std::vector<double> cuts{0.0};
            if (dl < 0.0) cuts.push_back(t * dk / (dk - dl));
            cuts.push_back(t);
            double sq = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double a = cuts[i], b = cuts[i + 1];
                s1 += piece_integral(a, b, expo(a), expo(b), 1);
                sq += piece_integral(a, b, 2.0 * expo(a), 2.0 * expo(b), 2);
            }
            s2 += std::sqrt(sq);
            if (tau_grid.empty()) continue;
            double best = 0.0;
            for (double tau : tau_grid) {
                // in t' the spike sits at tau (k - l)/k and decays at rate >= eps + alpha k past it
                const double tr = dl < 0.0 ? tau * (dk - dl) / dk : tau;
                const double end = tr + 60.0 / (eps + alpha * dk);
                auto f = [&](double tt) {
                    if (tt <= 0.0) return 0.0;
                    return kernel_Kmode(k, l, tt, tau, alpha, gamma) * std::exp(eps * (tau - tt));
                };
                const auto q = integrate(f, tau, end, moment_options(), {tr});
                out.resolved = out.resolved && q.converged;
                best = std::max(best, q.value);
            }
            s3 += best;
        }
        if (s1 > out.m1) {
            out.m1 = s1;
            out.k_at_sup = k;
        }
        out.m2 = std::max(out.m2, s2);
        out.m3 = std::max(out.m3, s3);
    }
    return out;
}

double exp_moment_bound(double a, double g, double e, double t) {
    const double la = std::log(1.0 / a);
    return 1.0 / (a * std::pow(e, g) * std::pow(t, g - 1.0)) + la / (a * std::pow(e, g) * std::pow(t, g)) +
           1.0 / (a * a * std::pow(e, 1.0 + g) * std::pow(t, 1.0 + g)) +
           (1.0 / (a * a * a) + la / (a * a * e)) * std::exp(-e * t / 4.0) + std::exp(-a * t / 2.0) / (a * a * a);
}

double l2_exp_moment_bound(double a, double g, double e, double t) {
    if (g > 1.0) return std::sqrt(1.0 / (std::pow(a, 4) * std::pow(e, 1.0 + 2.0 * g) * std::pow(t, 2.0 * (g - 1.0))));
    return std::sqrt(1.0 / (a * a * a * e * e) + 1.0 / (a * a * e * e * e * t));
}

double dual_moment_bound(double a, double g, double e) {
    return 1.0 / (a * a * e) + std::log(1.0 / a) / (a * std::pow(e, g));
}

double mode_moment_bound(int which, double a, double g, double e, double t) {
    switch (which) {
    case 1: return 1.0 / (a * a * std::pow(e, g + 1.0) * std::pow(t, g));
    case 2: return 1.0 / (a * std::pow(e, g + 0.5) * std::pow(t, g - 0.5));
    case 3: return 1.0 / (a * a * a * e);
    default: throw ConfigError("mode moment index must be 1, 2 or 3");
    }
}

// ---- baby models ----

namespace {

void check_order(int M) {
    if (M < 0 || M > 60) throw ConfigError("baby-model order M must lie in [0, 60]");
}

void check_finite(const std::vector<double>& c) {
    for (double x : c)
        if (!std::isfinite(x)) throw NumericalError("baby-model coefficients overflow; reduce M");
}

double horner(const std::vector<double>& c, double t) {
    double s = 0.0;
    for (std::size_t n = c.size(); n-- > 0;) s = s * t + c[n];
    return s;
}

// sum_{k>K} k^{-s} by Euler-Maclaurin (error O(K^{-s-3})).
double zeta_tail(double s, double K) {
    return std::pow(K, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(K, -s) + s * std::pow(K, -s - 1.0) / 12.0;
}

} // namespace

double baby_b_inner_sum(int n, double gamma) {
    if (n < 0) throw ConfigError("inner-sum index must be >= 0");
    if (!(gamma > 0.0)) throw ConfigError("inner sum needs gamma > 0");
    if (n == 0) return boost::math::zeta(1.0 + gamma); // k = 1 contributes 0^0 = 1
    const double dn = n;
    // f(x) = x^{-1-g} (1-1/x)^n; direct sum to K, then the integral (incomplete beta) and
    // Euler-Maclaurin corrections for the rest
    const long K = std::max<long>(100000, 50L * n);
    auto f = [&](double x) { return std::exp(-(1.0 + gamma) * std::log(x) + dn * std::log1p(-1.0 / x)); };
    double sum = 0.0;
    for (long k = K; k >= 2; --k) sum += f(static_cast<double>(k));
    // int_K^inf f = int_0^{1/K} u^{g-1} (1-u)^n du, expanded in u (small): sum_i C(n,i)(-1)^i u^{g+i}/(g+i)
    const double u = 1.0 / static_cast<double>(K);
    double integral = 0.0, binom = 1.0;
    for (int i = 0; i <= n && i < 60; ++i) {
        if (i > 0) binom *= -(dn - i + 1.0) / i;
        const double term = binom * std::pow(u, gamma + i) / (gamma + i);
        integral += term;
        if (std::fabs(term) < 1e-20 * std::fabs(integral)) break;
    }
    const double x = static_cast<double>(K);
    const double fp = f(x) * (-(1.0 + gamma) / x + dn / (x * (x - 1.0)));
    // sum_{k>K} f(k) = int_K^inf f - f(K)/2 - f'(K)/12 + ...
    return sum + integral - 0.5 * f(x) - fp / 12.0;
}

double BabySeries::eval(double t, long k) const {
    if (model == BabyModel::Mode) {
        if (k < 1 || k > static_cast<long>(coeffs.size())) throw DomainError("mode index outside the computed range");
        return horner(coeffs[static_cast<std::size_t>(k - 1)], t);
    }
    return horner(coeffs.front(), t);
}

double BabySeries::residual(double t, long k) const {
    switch (model) {
    case BabyModel::A: return eval(t) - a - c * t * eval(t / 2.0);
    case BabyModel::B: {
        // phi(t) - a - c t sum_k k^{-1-g} phi((1-1/k) t); the k-sum runs to Kc and the rest uses
        // phi((1-1/k)t) = phi(t) - t phi'(t)/k + O(k^-2)
        const long Kc = 100000;
        double s = 0.0;
        for (long j = Kc; j >= 1; --j) {
            const double dj = static_cast<double>(j);
            s += std::pow(dj, -1.0 - gamma) * eval((1.0 - 1.0 / dj) * t);
        }
        std::vector<double> d(coeffs.front().size() > 1 ? coeffs.front().size() - 1 : 1, 0.0);
        for (std::size_t n = 1; n < coeffs.front().size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs.front()[n];
        const double dphi = horner(d, t), Kd = static_cast<double>(Kc);
        s += eval(t) * zeta_tail(1.0 + gamma, Kd) - t * dphi * zeta_tail(2.0 + gamma, Kd);
        return eval(t) - a - c * t * s;
    }
    case BabyModel::Mode: {
        if (k < 1 || k + 1 > static_cast<long>(coeffs.size())) throw DomainError("residual needs modes k and k+1");
        const double dk = static_cast<double>(k);
        return eval(t, k) - a * std::exp(-decay * dk) -
               c * t / std::pow(dk + 1.0, 1.0 + gamma) * eval(dk * t / (dk + 1.0), k + 1);
    }
    }
    return 0.0;
}

BabySeries baby_phi(double a, double c, int M) {
    check_order(M);
    BabySeries s;
    s.model = BabyModel::A;
    s.a = a;
    s.c = c;
    s.order = M;
    std::vector<double> co(static_cast<std::size_t>(M) + 1);
    co[0] = a;
    for (int k = 0; k < M; ++k) co[static_cast<std::size_t>(k) + 1] = c * co[static_cast<std::size_t>(k)] * std::ldexp(1.0, -k);
    check_finite(co);
    s.coeffs = {co};
    return s;
}

BabySeries baby_b(double a, double c, double gamma, int M) {
    check_order(M);
    if (!(gamma >= 1.0)) throw ConfigError("baby model b needs gamma >= 1");
    BabySeries s;
    s.model = BabyModel::B;
    s.a = a;
    s.c = c;
    s.gamma = gamma;
    s.order = M;
    std::vector<double> co(static_cast<std::size_t>(M) + 1);
    co[0] = a;
    for (int n = 0; n < M; ++n) co[static_cast<std::size_t>(n) + 1] = c * baby_b_inner_sum(n, gamma) * co[static_cast<std::size_t>(n)];
    check_finite(co);
    s.coeffs = {co};
    return s;
}

BabySeries baby_mode(double a, double decay, double c, double gamma, int M, long modes) {
    check_order(M);
    if (modes < 1) throw ConfigError("baby mode model needs at least one mode");
    if (!(gamma >= 1.0)) throw ConfigError("baby mode model needs gamma >= 1");
    BabySeries s;
    s.model = BabyModel::Mode;
    s.a = a;
    s.c = c;
    s.gamma = gamma;
    s.decay = decay;
    s.order = M;
    // a_{k,m} needs a_{k+1,m-1}: rows up to modes + M
    const std::size_t rows = static_cast<std::size_t>(modes + M);
    std::vector<std::vector<double>> co(rows, std::vector<double>(static_cast<std::size_t>(M) + 1, 0.0));
    for (std::size_t r = 0; r < rows; ++r) co[r][0] = a * std::exp(-decay * static_cast<double>(r + 1));
    for (int m = 1; m <= M; ++m)
        for (std::size_t r = 0; r + 1 < rows; ++r) {
            const double k = static_cast<double>(r + 1);
            co[r][static_cast<std::size_t>(m)] = co[r + 1][static_cast<std::size_t>(m) - 1] * c *
                                                 std::pow(k + 1.0, -(1.0 + gamma)) * std::pow(k / (k + 1.0), m - 1);
        }
    for (const auto& r : co) check_finite(r);
    // the last rows lack their higher coefficients; keep the complete ones
    co.resize(static_cast<std::size_t>(modes));
    s.coeffs = std::move(co);
    return s;
}

} // namespace landau
