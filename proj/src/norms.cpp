#include "landau/norms.hpp"

#include "landau/error.hpp"
#include "landau/fft.hpp"
#include "landau/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace landau {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double max_exponent = 700.0;

NormValue overflowed() {
    NormValue v;
    v.value = std::numeric_limits<double>::infinity();
    v.overflow = true;
    return v;
}

double lp_norm(const cplx* x, std::size_t n, double dv, LpIndex p) {
    double s = 0.0;
    switch (p) {
    case LpIndex::One:
        for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
        return s * dv;
    case LpIndex::Two:
        for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
        return std::sqrt(s * dv);
    case LpIndex::Inf:
        for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(x[i]));
        return s;
    }
    return s;
}

// Series sum_{n<=N} lambda^n/n! ||(d_v + 2 i pi s)^n g||_p for one row g given on the v grid.
// Terms are built in eta space: c_n = c_{n-1} * lambda * 2 i pi (eta + s) / n.
struct RowSeries {
    double value = 0.0;
    bool overflow = false;
};

RowSeries row_series(const cplx* g, const VelocityGrid& vg, double lambda, double shift, LpIndex p, int order) {
    const std::size_t nv = vg.nv;
    const Fft fft(nv);
    std::vector<cplx> spec(g, g + nv), term(nv);
    fft.forward(spec.data()); // phases of v_0 = -vmax cancel on the way back
    const double norm = 1.0 / static_cast<double>(nv);
    RowSeries r;
    for (std::size_t q = 0; q < nv; ++q) {
        if (two_pi * lambda * std::abs(vg.eta(q) + shift) > max_exponent && spec[q] != 0.0) {
            r.overflow = true;
            return r;
        }
        spec[q] *= norm;
    }
    for (int n = 0; n <= order; ++n) {
        if (n > 0) {
            const double c = lambda / static_cast<double>(n);
            for (std::size_t q = 0; q < nv; ++q) spec[q] *= cplx(0.0, two_pi * c * (vg.eta(q) + shift));
        }
        term = spec;
        fft.inverse(term.data());
        r.value += lp_norm(term.data(), nv, vg.dv(), p);
        if (n > 0 && lambda == 0.0) break;
    }
    return r;
}

void check_indices(double lambda, double mu) {
    if (!(lambda >= 0.0) || !(mu >= 0.0) || !std::isfinite(lambda) || !std::isfinite(mu))
        throw ConfigError("norm indices lambda, mu must be finite and >= 0");
}

// Numerical band limit: entries below 1e-15 of the largest one count as zero.
double support_floor(std::span<const cplx> spec) {
    double m = 0.0;
    for (const auto& z : spec) m = std::max(m, std::abs(z));
    return 1e-15 * m;
}

// max |eta_q + shift| over the support of one dual row (FFT order).
double dual_radius(std::span<const cplx> spec, const VelocityGrid& vg, double shift, double floor) {
    double r = 0.0;
    for (std::size_t q = 0; q < spec.size(); ++q)
        if (std::abs(spec[q]) > floor) r = std::max(r, std::abs(vg.eta(q) + shift));
    return r;
}

double log_term(double x, int n) { return n * std::log(x) - std::lgamma(n + 1.0); }

// sum_{n>N} x^n/n!
double tail_after(double x, int N) {
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    for (int n = N + 1;; ++n) {
        const double t = std::exp(log_term(x, n));
        sum += t;
        if (n > x && t <= 1e-17 * sum) break;
        if (n > N + 100000) break;
    }
    return sum;
}

// Order for a field whose rows have dual radius at most eta_eff; -1 when the weights overflow.
int certified_order(double lambda, double eta_eff, int n_max, double tol, double& tail) {
    const double x = two_pi * lambda * eta_eff;
    if (x > max_exponent) return -1;
    const auto [n_auto, t_auto] = series_order(x, tol);
    if (n_max == 0) {
        tail = t_auto;
        return n_auto;
    }
    if (n_max < n_auto)
        throw NumericalError("derivative series truncated at N_max = " + std::to_string(n_max) +
                             " is not certified to tol; needs N_max >= " + std::to_string(n_auto));
    tail = tail_after(x, n_max);
    return n_max;
}

} // namespace

std::string_view to_string(NormFamily f) {
    switch (f) {
    case NormFamily::C: return "C";
    case NormFamily::F: return "F";
    case NormFamily::Z: return "Z";
    case NormFamily::Y: return "Y";
    }
    return "?";
}

NormFamily norm_family_from_string(std::string_view s) {
    if (s == "C") return NormFamily::C;
    if (s == "F") return NormFamily::F;
    if (s == "Z") return NormFamily::Z;
    if (s == "Y") return NormFamily::Y;
    throw ConfigError("unknown norm family '" + std::string(s) + "' (C, F, Z, Y)");
}

LpIndex lp_from_string(std::string_view s) {
    if (s == "1") return LpIndex::One;
    if (s == "2") return LpIndex::Two;
    if (s == "inf" || s == "infinity") return LpIndex::Inf;
    throw ConfigError("p must be 1, 2 or inf");
}

std::string_view to_string(LpIndex p) {
    switch (p) {
    case LpIndex::One: return "1";
    case LpIndex::Two: return "2";
    case LpIndex::Inf: return "inf";
    }
    return "?";
}

void NormSpec::validate() const {
    check_indices(lambda, mu);
    if (!std::isfinite(tau)) throw ConfigError("time shift must be finite");
    if (n_max < 0) throw ConfigError("N_max must be >= 0");
    if (!(tol > 0.0)) throw ConfigError("truncation tolerance must be positive");
}

std::pair<int, double> series_order(double x, double tol) {
    if (x == 0.0) return {0, 0.0};
    // tail(N) = sum_{n>N} x^n/n!, accumulated backwards from a point where terms are negligible
    const int n_end = static_cast<int>(std::ceil(2.0 * std::exp(1.0) * x + 60.0));
    std::vector<double> term(static_cast<std::size_t>(n_end) + 1);
    for (int n = 0; n <= n_end; ++n) term[static_cast<std::size_t>(n)] = std::exp(log_term(x, n));
    double tail = 0.0;
    int best = n_end;
    double best_tail = 0.0;
    for (int n = n_end; n >= 0; --n) {
        // tail beyond order n
        if (tail < tol) {
            best = n;
            best_tail = tail;
        } else {
            break;
        }
        tail += term[static_cast<std::size_t>(n)];
    }
    return {best, best_tail};
}

NormValue norm_F(const DistributionField& f, double lambda, double mu, double tau) {
    check_indices(lambda, mu);
    const DistributionField s = f.to(Representation::Spectral);
    const auto& g = s.grid();
    NormValue out;
    double total = 0.0;
    for (std::size_t r = 0; r < g.x.nx; ++r) {
        const double k = static_cast<double>(g.x.mode(r));
        double row = 0.0;
        for (std::size_t q = 0; q < g.v.nv; ++q) {
            const double a = std::abs(s.at(r, q));
            if (a == 0.0) continue;
            const double e = two_pi * (lambda * std::abs(k * tau / g.x.L + g.v.eta(q)) + mu * std::abs(k));
            if (e > max_exponent) return overflowed();
            row += a * std::exp(e);
        }
        total += row;
    }
    out.value = total * g.v.deta();
    return out;
}

NormValue norm_Y(const DistributionField& f, double lambda, double mu, double tau) {
    check_indices(lambda, mu);
    const DistributionField s = f.to(Representation::Spectral);
    const auto& g = s.grid();
    NormValue out;
    for (std::size_t r = 0; r < g.x.nx; ++r) {
        const double k = static_cast<double>(g.x.mode(r));
        for (std::size_t q = 0; q < g.v.nv; ++q) {
            const double a = std::abs(s.at(r, q));
            if (a == 0.0) continue;
            const double e = two_pi * (lambda * std::abs(k * tau / g.x.L + g.v.eta(q)) + mu * std::abs(k));
            if (e > max_exponent) return overflowed();
            out.value = std::max(out.value, a * std::exp(e));
        }
    }
    return out;
}

NormValue norm_Z(const DistributionField& f, double lambda, double mu, double tau, LpIndex p, int n_max, double tol) {
    NormSpec{NormFamily::Z, lambda, mu, tau, p, n_max, tol}.validate();
    const DistributionField m = f.to(Representation::Mixed);
    const auto& g = m.grid();
    const DistributionField sp = m.to(Representation::Spectral);
    double eta_eff = 0.0;
    for (std::size_t r = 0; r < g.x.nx; ++r)
        eta_eff = std::max(eta_eff, dual_radius(sp.row(r), g.v, tau * g.x.mode(r) / g.x.L, support_floor(sp.values())));
    NormValue out;
    out.n_used = certified_order(lambda, eta_eff, n_max, tol, out.tail);
    if (out.n_used < 0) return overflowed();
    std::vector<RowSeries> rows(g.x.nx);
    parallel_for(g.x.nx, [&](std::size_t r) {
        const double l = static_cast<double>(g.x.mode(r));
        rows[r] = row_series(m.row(r).data(), g.v, lambda, tau * l / g.x.L, p, out.n_used);
        rows[r].value *= std::exp(two_pi * mu * std::abs(l));
        if (two_pi * mu * std::abs(l) > max_exponent) rows[r].overflow = true;
    });
    for (const auto& r : rows) {
        if (r.overflow) return overflowed();
        out.value += r.value;
    }
    return out;
}

NormValue norm_C_onevar(std::span<const cplx> gv, const VelocityGrid& grid, double lambda, LpIndex p, int n_max,
                        double tol) {
    grid.validate();
    if (gv.size() != grid.nv) throw ConfigError("one-variable norm: sample count differs from N_v");
    NormSpec{NormFamily::C, lambda, 0.0, 0.0, p, n_max, tol}.validate();
    std::vector<cplx> sp(gv.begin(), gv.end());
    Fft(grid.nv).forward(sp.data());
    NormValue out;
    out.n_used = certified_order(lambda, dual_radius(sp, grid, 0.0, support_floor(sp)), n_max, tol, out.tail);
    if (out.n_used < 0) return overflowed();
    const RowSeries r = row_series(gv.data(), grid, lambda, 0.0, p, out.n_used);
    if (r.overflow) return overflowed();
    out.value = r.value;
    return out;
}

NormValue evaluate_norm(const NormSpec& spec, const DistributionField& f) {
    spec.validate();
    switch (spec.family) {
    case NormFamily::F: return norm_F(f, spec.lambda, spec.mu, spec.tau);
    case NormFamily::Y: return norm_Y(f, spec.lambda, spec.mu, spec.tau);
    case NormFamily::Z: return norm_Z(f, spec.lambda, spec.mu, spec.tau, spec.p, spec.n_max, spec.tol);
    case NormFamily::C: {
        // x-average <f>(v) = f^(0,v) / L
        const DistributionField m = f.to(Representation::Mixed);
        std::vector<cplx> avg(m.row(0).begin(), m.row(0).end());
        for (auto& z : avg) z /= m.grid().x.L;
        return norm_C_onevar(avg, m.grid().v, spec.lambda, spec.p, spec.n_max, spec.tol);
    }
    }
    return {};
}

} // namespace landau
