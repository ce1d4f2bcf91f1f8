#include "landau/error.hpp"
#include "landau/profiles.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace landau;
using std::numbers::pi;

TEST_CASE("maxwellian normalization") {
    const auto p = VelocityProfile::maxwellian(1.0, 1.0 / (2 * pi));
    for (double v : {-2.0, -0.3, 0.0, 0.7, 1.9}) CHECK(p.f0(v) == doctest::Approx(std::exp(-pi * v * v)).epsilon(1e-14));
    for (double e : {0.0, 0.4, 1.3}) CHECK(std::abs(p.f0_tilde(e) - std::exp(-pi * e * e)) < 1e-15);
    const auto q = VelocityProfile::maxwellian(2.5, 0.7);
    CHECK(std::abs(q.f0_tilde(0.0) - 2.5) < 1e-15);
}

TEST_CASE("transforms agree with quadrature") {
    boost::math::quadrature::tanh_sinh<double> ts;
    const auto p = VelocityProfile::maxwellian(1.3, 0.8);
    for (double eta : {0.3, 1.7}) {
        const double re = ts.integrate([&](double v) { return p.f0(v) * std::cos(2 * pi * eta * v); },
                                       -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
        CHECK(std::abs(p.f0_tilde(eta) - re) <= 1e-10);
    }
    const double mass = ts.integrate([&](double v) { return p.f0(v); }, -std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity());
    CHECK(std::fabs(mass - 1.3) < 1e-10);

    // Cauchy: int cos(2 pi v)/(1+v^2) dv over R = 2 * int_0^inf
    boost::math::quadrature::ooura_fourier_cos<double> oc;
    const auto c = VelocityProfile::cauchy();
    const double half = oc.integrate([](double v) { return 1.0 / (1.0 + v * v); }, 2 * pi).first;
    CHECK(std::fabs(2 * half - pi * std::exp(-2 * pi)) < 1e-10);
    CHECK(std::abs(c.f0_tilde(1.0) - pi * std::exp(-2 * pi)) < 1e-15);

    // shifted bump: phase factor
    const auto b = VelocityProfile::two_bump(1.2, 0.7, 0.3, 0.5);
    for (double eta : {0.25, 0.9}) {
        using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double re = gk::integrate([&](double v) { return b.f0(v) * std::cos(2 * pi * eta * v); }, -20.0, 20.0, 15, 1e-14);
        const double im = gk::integrate([&](double v) { return -b.f0(v) * std::sin(2 * pi * eta * v); }, -20.0, 20.0, 15, 1e-14);
        CHECK(std::abs(b.f0_tilde(eta) - cplx(re, im)) < 1e-10);
    }
}

TEST_CASE("profile invariants") {
    const VelocityProfile profiles[] = {VelocityProfile::maxwellian(1, 0.3), VelocityProfile::cauchy(),
                                        VelocityProfile::two_bump(2.0, 0.5, 0.5, 0.4),
                                        VelocityProfile::two_bump(0.7, 0.2, 0.8, 1.1)};
    for (const auto& p : profiles) {
        const double f00 = std::abs(p.f0_tilde(0.0));
        for (double eta = -6; eta <= 6; eta += 0.01) {
            const cplx z = p.f0_tilde(eta);
            CHECK(std::abs(z) <= f00 * (1 + 1e-14));
            CHECK(std::abs(p.f0_tilde(-eta) - std::conj(z)) < 1e-14);
            CHECK(std::abs(z) <= p.c0() * std::exp(-2 * pi * p.lambda0() * std::fabs(eta)) * (1 + 1e-12));
        }
        for (double v = -5; v <= 5; v += 0.05) {
            CHECK(p.f0(v) >= 0);
            const double h = 1e-5;
            for (long k : {1L, -1L}) {
                const auto m = marginal(p, k);
                const double fd = (m.phi(v + h) - m.phi(v - h)) / (2 * h);
                CHECK(std::fabs(fd - m.phi_prime(v)) < 1e-6);
                const double fd2 = (m.phi_prime(v + h) - m.phi_prime(v - h)) / (2 * h);
                CHECK(std::fabs(fd2 - m.phi_second(v)) < 1e-6);
            }
        }
    }
    CHECK_THROWS_AS(VelocityProfile::two_bump(1.0, -0.1, 1.1, 1.0), ConfigError);
    CHECK_THROWS_AS(VelocityProfile::two_bump(-1.0, 0.5, 0.5, 1.0), ConfigError);
}

TEST_CASE("two-bump collapse and central dip threshold") {
    const auto m = VelocityProfile::maxwellian(1.0, 0.6);
    const auto b = VelocityProfile::two_bump(0.0, 0.5, 0.5, 0.6);
    for (double v = -3; v <= 3; v += 0.1) CHECK(b.f0(v) == doctest::Approx(m.f0(v)).epsilon(1e-14));

    // A dip at v = 0 appears when f0' changes sign more than once; for equal
    // bumps of variance T it happens at a = sqrt(T).
    auto sign_changes = [](const VelocityProfile& p) {
        int n = 0;
        double prev = p.f0_prime(-6.0);
        for (double v = -6.0 + 1e-3; v <= 6.0; v += 1e-3) {
            const double d = p.f0_prime(v);
            if ((d > 0) != (prev > 0) && d != 0) ++n;
            prev = d;
        }
        return n;
    };
    const double T = 0.6, thr = std::sqrt(T);
    CHECK(sign_changes(VelocityProfile::two_bump(0.95 * thr, 0.5, 0.5, T)) == 1);
    CHECK(sign_changes(VelocityProfile::two_bump(1.05 * thr, 0.5, 0.5, T)) == 3);
}

TEST_CASE("Jeans and Debye lengths") {
    CHECK(jeans_length(1, 1, 1) == doctest::Approx(1.7724539).epsilon(1e-7));
    CHECK(jeans_length(2.3, 0.4, 1.7) == debye_length(2.3, 0.4, 1.7));
    CHECK_THROWS_AS(jeans_length(0, 1, 1), ConfigError);
}

TEST_CASE("interaction presets") {
    CHECK(Interaction::gravitational(1).w_hat(1) == doctest::Approx(-1 / pi));
    CHECK(Interaction::electrostatic(1).w_hat(2) == doctest::Approx(1 / (4 * pi)));
    CHECK(Interaction::gravitational(1).w_hat_L(1, 2.0) == doctest::Approx(-4 / pi));
    CHECK(Interaction::gravitational(1).w_hat(0) == 0.0);
    CHECK_THROWS_AS(Interaction::power_law(0.5, 1.0), ConfigError);
    CHECK_THROWS_AS(Interaction::electrostatic(-1), ConfigError);
    const Interaction presets[] = {Interaction::gravitational(2.0), Interaction::electrostatic(0.5),
                                   Interaction::screened_analytic(0.3), Interaction::power_law(1.5, 2.0),
                                   Interaction::power_law(1.0, 0.2)};
    for (const auto& w : presets)
        for (long k = 1; k <= 64; ++k) {
            CHECK(w.w_hat(k) == w.w_hat(-k));
            CHECK(std::fabs(w.w_hat(k)) * std::pow(double(k), 1 + w.gamma()) <= w.c_w() * (1 + 1e-14));
        }
    CHECK(Interaction::gravitational(1).coupling() == Coupling::Attractive);
    CHECK(Interaction::electrostatic(1).coupling() == Coupling::Repulsive);
    const auto t = Interaction::table({{1, 0.3}, {2, 0.1}});
    CHECK(t.w_hat(-2) == 0.1);
    CHECK(t.w_hat(3) == 0.0);
    CHECK(t.scaled(0.5).w_hat(1) == 0.15);
}
