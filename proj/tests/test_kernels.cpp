#include "doctest.h"

#include "landau/error.hpp"
#include "landau/kernels.hpp"
#include "landau/simd/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>

using namespace landau;

namespace {

// Direct enumeration of the lattice sup over |k|, |l| <= box.
double brute_kernel(bool gamma_family, double t, double tau, double a, double g, long box) {
    double best = 0.0;
    for (long k = -box; k <= box; ++k)
        for (long l = -box; l <= box; ++l) {
            if (k == 0 || l == 0) continue;
            const double j = std::abs(static_cast<double>(k - l));
            const double r = std::abs(static_cast<double>(k) * (t - tau) + static_cast<double>(l) * tau);
            double v;
            if (gamma_family)
                v = std::exp(-a * std::abs(static_cast<double>(l)) - a * (t - tau) / t * j - a * r) / (1.0 + std::pow(j, g));
            else
                v = std::exp(-a * std::abs(static_cast<double>(l)) - a * j - a * r);
            best = std::max(best, v);
        }
    return (1.0 + tau) * best;
}

// Composite Simpson on a uniform grid fine enough to resolve the spikes.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("kernel endpoint and resonance values") {
    CHECK(kernel_Kbar(0.0, 0.0, 0.3) == doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
    // tau = t: (1+t) sup e^{-a|l|} e^{-a|k-l|} e^{-a|l| t}, attained at k = l = 1
    CHECK(kernel_Kbar(2.0, 2.0, 0.3) == doctest::Approx(3.0 * std::exp(-0.3 * 3.0)).epsilon(1e-15));
    // k = 1, l = -1 at tau = t/2: the resonance exponent vanishes
    const double t = 40.0, a = 0.25;
    const double peak = kernel_Kbar(t, t / 2, a);
    CHECK(peak == doctest::Approx((1.0 + t / 2) * std::exp(-3.0 * a)).epsilon(1e-14));
    CHECK(kernel_Kbar(t, t / 2 - 1.0, a) < peak);
    CHECK(kernel_Kbar(t, t / 2 + 1.0, a) < peak);
    CHECK(kernel_Kmode(1, -1, t, t / 2, a, 1.0) == doctest::Approx((1 + t / 2) * std::exp(-2 * a) / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_Kgamma(0.0, 0.0, a, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_Kbar(1.0, 2.0, a), DomainError);
    CHECK_THROWS_AS(kernel_Kmode(0, 1, 1.0, 0.5, a, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_Kgamma(1.0, 0.5, a, 0.5), ConfigError);
}

TEST_CASE("exact lattice sup against enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        const double t = 0.1 + 30.0 * u(rng), tau = t * u(rng);
        const double a = 0.1 + 0.9 * u(rng), g = 1.0 + 2.0 * u(rng);
        // the box holds every term above 1e-16 of the sup
        const long box = 250;
        const double eb = brute_kernel(false, t, tau, a, g, box), eg = brute_kernel(true, t, tau, a, g, box);
        worst = std::max(worst, std::abs(kernel_Kbar(t, tau, a) - eb) / eb);
        worst = std::max(worst, std::abs(kernel_Kgamma(t, tau, a, g) - eg) / eg);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("truncated lattice scan") {
    SUBCASE("scalar and AVX2 scans agree bit for bit") {
        if (simd::avx2_available()) {
            for (double tau : {0.0, 1.3, 7.7, 9.99}) {
                simd::force_backend(simd::Backend::Scalar);
                const double s = kernel_truncated(KernelFamily::Kgamma, 10.0, tau, 0.2, 1.5, 37);
                simd::force_backend(simd::Backend::Avx2);
                CHECK(kernel_truncated(KernelFamily::Kgamma, 10.0, tau, 0.2, 1.5, 37) == s);
            }
        }
    }
    SUBCASE("certificate: K_max -> K_max + 2 changes nothing once the box holds the sup") {
        for (double tau : {0.0, 2.5, 5.0, 8.0, 10.0}) {
            const double kb = kernel_truncated(KernelFamily::Kbar, 10.0, tau, 0.5, 1.0, 80);
            CHECK(std::abs(kb - kernel_truncated(KernelFamily::Kbar, 10.0, tau, 0.5, 1.0, 82)) < 1e-10);
            CHECK(kb == doctest::Approx(kernel_Kbar(10.0, tau, 0.5)).epsilon(1e-13));
        }
        // Kgamma with tau <= t/2 is controlled by small indices
        for (double tau : {0.5, 2.5, 5.0}) {
            const double kg = kernel_truncated(KernelFamily::Kgamma, 10.0, tau, 0.5, 2.0, 80);
            CHECK(std::abs(kg - kernel_truncated(KernelFamily::Kgamma, 10.0, tau, 0.5, 2.0, 82)) < 1e-10);
            CHECK(kg == doctest::Approx(kernel_Kgamma(10.0, tau, 0.5, 2.0)).epsilon(1e-13));
        }
    }
    SUBCASE("truncation drops the late resonances near tau = t") {
        // the resonance k = 20, l = -1 sits at tau = 20 t / 21 and is outside a box of 8
        const double t = 21.0, tau = 20.0;
        CHECK(kernel_truncated(KernelFamily::Kgamma, t, tau, 0.3, 1.0, 8) < 0.5 * kernel_Kgamma(t, tau, 0.3, 1.0));
    }
}

TEST_CASE("kernel orderings") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int half_ok = 0, mono_ok = 0, n = 0;
    for (int i = 0; i < 400; ++i) {
        const double t = 0.5 + 60.0 * u(rng), a = 0.05 + 0.5 * u(rng), g = 1.0 + u(rng);
        const double tau = 0.5 * t * u(rng);
        ++n;
        half_ok += kernel_Kgamma(t, tau, a, g) <= kernel_Kbar(t, tau, a / 2) * (1 + 1e-14);
        const double tt = t * u(rng);
        mono_ok += kernel_Kgamma(t, tt, a, g) <= kernel_Kgamma(t, tt, 0.8 * a, g) &&
                   kernel_Kbar(t, tt, a) <= kernel_Kbar(t, tt, 0.8 * a) && kernel_Kbar(t, tt, a) >= 0.0;
    }
    CHECK(half_ok == n);
    CHECK(mono_ok == n);
}

TEST_CASE("exponential moments") {
    KernelSpec s;
    s.alpha = 0.5;
    s.gamma = 1.0;
    SUBCASE("against a fine uniform Simpson rule") {
        const double t = 6.0, eps = 0.3;
        const auto m = exp_moment(s, eps, t);
        CHECK(m.resolved);
        const double ref = simpson(
            [&](double tau) { return kernel_Kgamma(t, tau, s.alpha, s.gamma) * std::exp(eps * (tau - t)); }, 0.0, t, 60000);
        CHECK(m.value == doctest::Approx(ref).epsilon(1e-6));
        const auto m2 = l2_exp_moment(s, eps, t);
        const double ref2 = simpson(
            [&](double tau) {
                const double k = kernel_Kgamma(t, tau, s.alpha, s.gamma);
                return k * k * std::exp(2 * eps * (tau - t));
            },
            0.0, t, 60000);
        CHECK(m2.value == doctest::Approx(std::sqrt(ref2)).epsilon(1e-6));
    }
    SUBCASE("nonincreasing in eps, nonnegative, vanishing kernel") {
        double prev = INFINITY;
        for (double eps : {0.05, 0.1, 0.2, 0.4}) {
            const double v = exp_moment(s, eps, 20.0).value;
            CHECK(v >= 0.0);
            CHECK(v <= prev);
            prev = v;
        }
        KernelSpec z = s;
        z.alpha = 800.0;
        CHECK(exp_moment(z, 0.1, 5.0).value < 1e-300);
        CHECK(dual_moment(z, 0.1, 50.0, {0.0, 1.0, 5.0}).value < 1e-100);
    }
    SUBCASE("gamma = 2 decays like 1/t, gamma = 1 does not decay") {
        const std::vector<double> ts{50.0, 100.0};
        KernelSpec g2 = s;
        g2.gamma = 2.0;
        std::vector<double> v2, v1;
        for (double t : ts) {
            v2.push_back(exp_moment(g2, 0.3, t).value);
            v1.push_back(exp_moment(s, 0.3, t).value);
        }
        CHECK(slope(ts, v2) == doctest::Approx(-0.9).epsilon(0.1));
        CHECK(v1[1] / v1[0] == doctest::Approx(1.0).epsilon(0.15));
    }
    SUBCASE("truncated kernel moment is below the full one") {
        KernelSpec tr = s;
        tr.k_max = 6;
        CHECK(exp_moment(tr, 0.3, 30.0).value < exp_moment(s, 0.3, 30.0).value);
    }
    CHECK_THROWS_AS(exp_moment(s, 1.5, 10.0), ConfigError);
}

TEST_CASE("dual moments") {
    KernelSpec s;
    s.alpha = 0.9;
    const std::vector<double> taus{10.0, 40.0};
    const auto d1 = dual_moment(s, 0.1, 400.0, taus);
    CHECK(d1.resolved);
    CHECK(d1.value > 0.0);
    CHECK(d1.tail_bound < 1e-12);
    // monotone nonincreasing in alpha
    KernelSpec s2 = s;
    s2.alpha = 0.95;
    CHECK(dual_moment(s2, 0.1, 400.0, taus).value <= d1.value);
    // against a uniform Simpson rule at one tau
    const double tau = 10.0, eps = 0.1;
    const double ref = simpson(
        [&](double t) { return kernel_Kgamma(t, tau, s.alpha, 1.0) * std::exp(eps * (tau - t)); }, tau, 400.0, 200000);
    CHECK(dual_moment(s, eps, 400.0, {tau}).value == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("mode-by-mode moments") {
    const double a = 0.9, g = 1.0, eps = 0.1, t = 60.0;
    const auto m = mode_moments(a, g, eps, t, 12, {0.0, 5.0, 20.0});
    CHECK(m.m1 > 0.0);
    CHECK(m.m2 > 0.0);
    CHECK(m.m3 > 0.0);
    CHECK(m.resolved);
    // oracle: Gauss-Kronrod on each (k, l) term with the resonance as a split point
    const long k = m.k_at_sup;
    double ref = 0.0;
    for (long l = -60; l <= 60; ++l) {
        if (l == 0) continue;
        auto f = [&](double tau) { return kernel_Kmode(k, l, t, tau, a, g) * std::exp(eps * (tau - t)); };
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        if (l < 0) {
            const double r = t * k / static_cast<double>(k - l);
            ref += GK::integrate(f, 0.0, r, 15, 1e-14) + GK::integrate(f, r, t, 15, 1e-14);
        } else {
            ref += GK::integrate(f, 0.0, t, 15, 1e-14);
        }
    }
    CHECK(m.m1 == doctest::Approx(ref).epsilon(1e-10));
    // doubling eps: predicted eps^{-2}
    const double r = mode_moments(a, g, eps, 200.0, 60).m1 / mode_moments(a, g, 2 * eps, 200.0, 60).m1;
    CHECK(r >= 2.5);
    CHECK(r <= 6.0);
    CHECK_THROWS_AS(mode_moments(0.2, 1.0, 0.1, 10.0, 4), ConfigError);
}

TEST_CASE("baby models") {
    SUBCASE("Phi satisfies phi(t) = a + c t phi(t/2)") {
        const auto s = baby_phi(1.5, 0.8, 40);
        double worst = 0.0;
        for (double t = 0.0; t <= 5.0; t += 0.25) worst = std::max(worst, std::abs(s.residual(t)));
        CHECK(worst < 1e-10);
        // closed form a sum c^k t^k / 2^{k(k-1)/2}
        double direct = 0.0;
        for (int k = 0; k <= 40; ++k) direct += 1.5 * std::pow(0.8 * 3.0, k) / std::pow(2.0, k * (k - 1) / 2.0);
        CHECK(s.eval(3.0) == doctest::Approx(direct).epsilon(1e-14));
        const auto flat = baby_phi(2.0, 0.0, 40);
        CHECK(flat.eval(7.0) == 2.0);
    }
    SUBCASE("inner sum against the Beta function") {
        const int n = 100;
        const double g = 2.0;
        const double beta = std::exp(std::lgamma(g) + std::lgamma(n + 1.0) - std::lgamma(n + g + 1.0));
        CHECK(baby_b_inner_sum(n, g) == doctest::Approx(beta).epsilon(0.1));
        // direct partial sum plus a crude tail bound
        double direct = 0.0;
        for (long k = 2; k <= 2000000; ++k) direct += std::pow(static_cast<double>(k), -3.0) * std::pow(1.0 - 1.0 / k, n);
        CHECK(baby_b_inner_sum(n, g) == doctest::Approx(direct).epsilon(1e-10));
        CHECK(baby_b_inner_sum(0, 1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-13));
    }
    SUBCASE("model b residual") {
        const auto s = baby_b(1.0, 0.5, 2.0, 40);
        for (double t : {0.5, 1.0, 2.0}) CHECK(std::abs(s.residual(t)) < 1e-10);
    }
    SUBCASE("mode model against the product formula") {
        const double A = 1.0, dec = 0.3, c = 0.7, g = 1.0;
        const auto s = baby_mode(A, dec, c, g, 20, 6);
        // a_{k,m} = A_{k+m} c^m prod_{i=1}^m (k+i)^{-(1+g)} * k^{m-1} / ((k+1)...(k+m-1))
        for (long k = 1; k <= 5; ++k)
            for (int m = 0; m <= 20; ++m) {
                double lg = std::log(A) - dec * (k + m) + m * std::log(c);
                for (int i = 1; i <= m; ++i) lg -= (1 + g) * std::log(static_cast<double>(k + i));
                if (m >= 1) lg += (m - 1) * std::log(static_cast<double>(k));
                for (int i = 1; i <= m - 1; ++i) lg -= std::log(static_cast<double>(k + i));
                CHECK(s.coeffs[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)] ==
                      doctest::Approx(std::exp(lg)).epsilon(1e-12));
            }
        for (double t : {1.0, 4.0}) CHECK(std::abs(s.residual(t, 2)) < 1e-10);
    }
    CHECK_THROWS_AS(baby_phi(1.0, 1.0, 61), ConfigError);
    CHECK_THROWS_AS(baby_phi(1.0, 1e300, 60), NumericalError);
}
