#include "landau/error.hpp"
#include "landau/linear.hpp"
#include "landau/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

double wrap(double a) { return std::remainder(a, two_pi); }

// Newton in zeta = conj(xi), where L - 1 is holomorphic.
std::optional<cplx> newton(const LinearSetup& s, long k, cplx xi) {
    cplx zeta = std::conj(xi);
    for (int it = 0; it < 60; ++it) {
        LaplaceValue v;
        try {
            v = laplace_L_derivative(s, std::conj(zeta), k);
        } catch (const DomainError&) {
            return std::nullopt;
        }
        const cplx g = v.value - 1.0;
        if (std::abs(g) < 1e-13) return std::conj(zeta);
        if (v.d_dzeta == 0.0) return std::nullopt;
        cplx step = g / v.d_dzeta;
        // damp steps that jump far outside the neighbourhood of the seed
        if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
        zeta -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(zeta))) break;
        if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) return std::nullopt;
    }
    try {
        if (std::abs(laplace_L(s, std::conj(zeta), k) - 1.0) < 1e-10) return std::conj(zeta);
    } catch (const DomainError&) {
    }
    return std::nullopt;
}

DispersionRoot make_root(const LinearSetup& s, long k, cplx xi) {
    DispersionRoot r;
    r.k = k;
    r.xi = xi;
    const double scale = two_pi * std::abs(static_cast<double>(k)) / s.L;
    r.growth_rate = -scale * xi.real();
    r.frequency = scale * xi.imag();
    r.residual = std::abs(laplace_L(s, xi, k) - 1.0);
    return r;
}

} // namespace

std::vector<DispersionRoot> dispersion_roots(const LinearSetup& s, long k, const RootSearchBox& box) {
    if (box.n_re < 1 || box.n_im < 1 || !(box.re_max > box.re_min) || !(box.im_max > box.im_min))
        throw ConfigError("root search box must have positive extent and resolution");
    if (k == 0 || s.w.w_hat_L(k, s.L) == 0.0) return {};
    const int nr = box.n_re + 1, ni = box.n_im + 1;
    const double hr = (box.re_max - box.re_min) / box.n_re, hi = (box.im_max - box.im_min) / box.n_im;
    auto node = [&](int i, int j) { return cplx(box.re_min + i * hr, box.im_min + j * hi); };

    // Cauchy backgrounds: keep the grid strictly inside the strip of definition.
    const double re_cap = s.f0.entire() ? INFINITY : s.f0.lambda0() * (1.0 - 1e-9);
    std::vector<cplx> g(static_cast<std::size_t>(nr * ni));
    std::vector<char> ok(g.size(), 1);
    parallel_for(static_cast<std::size_t>(nr), [&](std::size_t i) {
        for (int j = 0; j < ni; ++j) {
            const cplx z = node(static_cast<int>(i), j);
            const std::size_t id = i * ni + j;
            if (z.real() >= re_cap) {
                ok[id] = 0;
                continue;
            }
            g[id] = laplace_L(s, z, k) - 1.0;
        }
    });
    auto at = [&](int i, int j) { return g[static_cast<std::size_t>(i * ni + j)]; };
    auto valid = [&](int i, int j) { return ok[static_cast<std::size_t>(i * ni + j)] != 0; };

    std::vector<cplx> seeds;
    for (int i = 0; i + 1 < nr; ++i) {
        for (int j = 0; j + 1 < ni; ++j) {
            if (!valid(i, j) || !valid(i + 1, j) || !valid(i, j + 1) || !valid(i + 1, j + 1)) continue;
            const cplx c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            double turn = 0.0;
            for (int e = 0; e < 4; ++e) turn += wrap(std::arg(c[(e + 1) % 4]) - std::arg(c[e]));
            if (std::abs(turn) > pi) seeds.push_back(node(i, j) + cplx(0.5 * hr, 0.5 * hi));
        }
    }
    // Local minima of |L - 1| catch roots the coarse winding count misses.
    for (int i = 1; i + 1 < nr; ++i) {
        for (int j = 1; j + 1 < ni; ++j) {
            if (!valid(i, j)) continue;
            const double v = std::abs(at(i, j));
            bool low = v < 0.5;
            for (int di = -1; di <= 1 && low; ++di)
                for (int dj = -1; dj <= 1 && low; ++dj)
                    if ((di || dj) && valid(i + di, j + dj) && std::abs(at(i + di, j + dj)) < v) low = false;
            if (low) seeds.push_back(node(i, j));
        }
    }

    std::vector<DispersionRoot> roots;
    const double slack = 1e-9 * (1.0 + std::abs(box.re_max) + std::abs(box.im_max));
    for (const cplx& seed : seeds) {
        const auto xi = newton(s, k, seed);
        if (!xi) continue;
        if (xi->real() < box.re_min - slack || xi->real() > box.re_max + slack || xi->imag() < box.im_min - slack ||
            xi->imag() > box.im_max + slack)
            continue;
        const bool dup = std::any_of(roots.begin(), roots.end(),
                                     [&](const DispersionRoot& r) { return std::abs(*r.xi - *xi) < 1e-7; });
        if (!dup) roots.push_back(make_root(s, k, *xi));
    }
    std::sort(roots.begin(), roots.end(), [](const DispersionRoot& a, const DispersionRoot& b) {
        if (a.growth_rate != b.growth_rate) return a.growth_rate > b.growth_rate;
        return a.frequency > b.frequency;
    });
    // conjugate pairs share the growth rate up to roundoff: prefer positive frequency
    if (roots.size() > 1 && std::abs(roots[0].growth_rate - roots[1].growth_rate) < 1e-9 &&
        roots[1].frequency > roots[0].frequency)
        std::swap(roots[0], roots[1]);
    return roots;
}

DispersionRoot dispersion_root(const LinearSetup& s, long k, const RootSearchBox& box) {
    auto roots = dispersion_roots(s, k, box);
    if (roots.empty()) {
        DispersionRoot r;
        r.k = k;
        r.diagnostic = s.w.w_hat_L(k, s.L) == 0.0 ? "interaction vanishes on this mode" : "no root found in the search box";
        return r;
    }
    return roots.front();
}

RootSearchBox default_root_box(const LinearSetup& s, long k, double re_max) {
    if (!s.f0.entire()) re_max = std::min(re_max, s.f0.lambda0() * (1.0 - 1e-6));
    const double R = std::max(laplace_root_radius(s, std::max(re_max, 0.0), k) * (1.0 + 1e-6), 1e-3);
    RootSearchBox box;
    box.re_min = -R;
    box.re_max = std::min(re_max, R);
    box.im_min = -R;
    box.im_max = R;
    // cells of about 0.02 so neighbouring roots land in different cells
    box.n_re = std::clamp(static_cast<int>((box.re_max - box.re_min) / 0.02), 8, 400);
    box.n_im = std::clamp(static_cast<int>((box.im_max - box.im_min) / 0.02), 16, 800);
    if (!(box.re_max > box.re_min)) box.re_max = box.re_min + 1e-3;
    return box;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const cplx> series, double t_begin, double t_end,
                        double residual_threshold) {
    if (t.size() != series.size()) throw ConfigError("fit_decay_rate: time and series lengths differ");
    std::vector<double> tt, aa;
    std::vector<cplx> zz;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_begin || t[i] > t_end) continue;
        tt.push_back(t[i]);
        aa.push_back(std::abs(series[i]));
        zz.push_back(series[i]);
    }
    if (tt.size() < 3) throw DomainError("fit_decay_rate: fewer than 3 samples in the window");

    std::vector<double> xs, ys;
    for (std::size_t i = 1; i + 1 < tt.size(); ++i) {
        if (aa[i] > aa[i - 1] && aa[i] >= aa[i + 1] && aa[i] > 0.0) {
            // parabolic refinement of the peak in log space
            const double l0 = std::log(aa[i - 1]), l1 = std::log(aa[i]), l2 = std::log(aa[i + 1]);
            const double den = l0 - 2.0 * l1 + l2;
            double off = 0.0, peak = l1;
            if (den < 0.0 && std::isfinite(l0) && std::isfinite(l2)) {
                off = 0.5 * (l0 - l2) / den;
                peak = l1 - 0.25 * (l0 - l2) * off;
            }
            xs.push_back(tt[i] + off * (tt[i + 1] - tt[i]));
            ys.push_back(peak);
        }
    }
    DecayFit fit;
    fit.maxima = xs.size();
    if (!xs.empty() && xs.size() < 5)
        throw DomainError("fit_decay_rate: insufficient data (" + std::to_string(xs.size()) + " envelope maxima, need 5)");
    if (xs.empty()) {
        for (std::size_t i = 0; i < tt.size(); ++i) {
            if (aa[i] <= 0.0) continue;
            xs.push_back(tt[i]);
            ys.push_back(std::log(aa[i]));
        }
        if (xs.size() < 3) throw DomainError("fit_decay_rate: series vanishes in the window");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx, icpt = my - slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (icpt + slope * xs[i]);
        ss += r * r;
    }
    fit.rate = -slope;
    fit.residual = std::sqrt(ss / n);
    fit.exponential = fit.residual <= residual_threshold;

    if (fit.maxima > 0) {
        // |z| peaks twice per period of a real oscillation: least-squares spacing of the maxima
        const double nm = static_cast<double>(xs.size());
        double si = 0.0, sii = 0.0, st = 0.0, sit = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double di = static_cast<double>(i);
            si += di;
            sii += di * di;
            st += xs[i];
            sit += di * xs[i];
        }
        const double spacing = (nm * sit - si * st) / (nm * sii - si * si);
        fit.frequency = std::numbers::pi / spacing;
    }
    return fit;
}

} // namespace landau
