#include "doctest.h"

#include "landau/error.hpp"
#include "landau/expansions.hpp"
#include "landau/linear.hpp"

#include <cmath>
#include <numbers>

using namespace landau;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> eta_grid(double h = 0.25, int n = 12) {
    std::vector<double> e;
    for (int i = -n; i <= n; ++i) e.push_back(i * h);
    return e;
}

// one-sided real profiles, so no pair cancels by parity
ExpansionConfig skewed(double w2 = 0.0) {
    ExpansionConfig c;
    c.eps = 1.0;
    c.alpha_c = 1.0;
    c.w1 = 1.0;
    c.w2 = w2;
    c.horizon = 10.0;
    c.phi1 = [](double x) { return cplx(std::exp(-pi * (x - 1.5) * (x - 1.5))); };
    c.phi2 = [](double x) { return cplx(std::exp(-pi * (x - 1.0) * (x - 1.0))); };
    return c;
}

ExpansionRun hetero_run() {
    ExpansionRun r;
    r.eps = 0.02;
    r.alpha_c = 0.01;
    r.w2 = 0.0;
    r.odd = true;
    r.modes = {{1, 0.1, 0.3}, {2, 0.1, -0.2}};
    return r;
}

} // namespace

TEST_CASE("first-order density: free limit and Volterra agreement") {
    ExpansionRun run;
    run.eps = 0.01;
    run.alpha_c = 0.0;
    auto c = run.expansion();
    const auto free = u1_volterra(c, 0.01, 3.0);
    for (std::size_t j = 0; j < free.t.size(); ++j) {
        CHECK(free.u1[j] == 0.5 * c.eps * c.phi(free.t[j]));
        CHECK(free.um1[j] == 0.5 * c.eps * c.phi(-free.t[j]));
    }

    run.alpha_c = 0.2;
    c = run.expansion();
    const auto u = u1_volterra(c, 0.01, 3.0);
    const SimConfig sim = run.sim();
    SimConfig bare = sim;
    bare.perturbations.clear();
    const DistributionField hi = initial_field(sim) - initial_field(bare);
    const auto sol = solve_volterra(LinearSetup{sim.f0, sim.w, 1.0}, source_from_field(hi), 0.01, 3.0, 1);
    REQUIRE(sol.mode(1).size() == u.t.size());
    double worst = 0.0;
    for (std::size_t j = 0; j < u.t.size(); ++j)
        worst = std::max({worst, std::abs(sol.mode(1)[j] - u.u1[j]), std::abs(sol.mode(-1)[j] - u.um1[j])});
    CHECK(worst < 1e-10);
}

TEST_CASE("first-order correction is linear in the coupling") {
    std::vector<double> scaled;
    for (double a : {0.1, 0.05, 0.025}) {
        ExpansionRun run;
        run.alpha_c = a;
        const auto c = run.expansion();
        const auto u = u1_volterra(c, 0.01, 4.0);
        double r = 0.0;
        for (std::size_t j = 0; j < u.t.size(); ++j) r = std::max(r, std::abs(u.u1[j] - 0.5 * c.eps * c.phi(u.t[j])));
        scaled.push_back(r / (c.eps * a));
    }
    CHECK(scaled[0] / scaled[1] == doctest::Approx(1.0).epsilon(0.1));
    CHECK(scaled[1] / scaled[2] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("second-order limit: symmetry and prefactor scaling") {
    ExpansionRun run;
    auto c = run.expansion();
    const auto eta = eta_grid();
    const auto g = second_order_limit(c, eta);
    CHECK(std::abs(g[12]) == 0.0);
    for (int i = 1; i <= 12; ++i) CHECK(std::abs(g[12 + i] - g[12 - i]) < 1e-12 * max_abs(g));
    CHECK(max_abs(g) > 0.0);

    auto c2 = c;
    c2.eps *= 2.0;
    c2.alpha_c *= 3.0;
    const auto g2 = second_order_limit(c2, eta);
    for (std::size_t i = 0; i < eta.size(); ++i) CHECK(std::abs(g2[i] - 12.0 * g[i]) < 1e-12 * max_abs(g2));

    // negligible at the horizon but carrying a bump beyond it
    c.horizon = 3.0;
    c.phi = [](double x) { return cplx(std::exp(-20.0 * x * x) + std::exp(-20.0 * (x - 4.5) * (x - 4.5))); };
    CHECK_THROWS_AS(second_order_limit(c, {4.5}), NumericalError);
}

TEST_CASE("third-order limit: scaling, degenerate data and the equal-coupling cancellation") {
    const std::vector<double> eta{-2.0, -0.5, 0.5, 1.0, 2.0};
    const auto c = skewed();
    const auto C = third_order_C(c, eta);
    CHECK(max_abs(C) > 1e-3);

    auto c2 = c;
    c2.eps = 0.5;
    c2.alpha_c = 0.25;
    const auto C2 = third_order_C(c2, eta);
    for (std::size_t i = 0; i < eta.size(); ++i) CHECK(std::abs(C2[i] - C[i] / 128.0) < 1e-9 * max_abs(C2));

    auto z = c;
    z.eps = 0.0;
    CHECK(max_abs(third_order_C(z, eta)) == 0.0);
    z = c;
    z.phi2 = {};
    CHECK(max_abs(third_order_C(z, eta)) == 0.0);
    CHECK(max_abs(third_order_displayed_block(z, eta)) == 0.0);

    // with w2 = 0 only the |k| = |l| = 1 block survives
    CHECK(max_diff(C, third_order_C(c, eta, PairSet::W1Block)) < 1e-12 * max_abs(C));
    // sign of the one-sided example at positive eta
    for (std::size_t i = 2; i < eta.size(); ++i) CHECK(C[i].real() < 0.0);

    // the mixed w1 w2 block is exactly minus the w1^2 block, so C is proportional to w1 (w1 - w2)
    const auto Cq = third_order_C(skewed(0.37), eta);
    for (std::size_t i = 0; i < eta.size(); ++i) CHECK(std::abs(Cq[i] - 0.63 * C[i]) < 1e-7 * max_abs(C));
    CHECK(max_abs(third_order_C(skewed(1.0), eta)) < 1e-9 * max_abs(C));
}

TEST_CASE("third-order limit under velocity reflection") {
    // C[phi o S](-eta) = sigma C[phi](eta) for the paired profiles phi_{-k} = sigma phi_k
    const std::vector<double> eta{-1.5, -0.5, 0.5, 1.5};
    for (int sigma : {-1, 1}) {
        auto c = skewed();
        c.sigma = sigma;
        auto r = c;
        r.phi1 = [p = c.phi1](double x) { return p(-x); };
        r.phi2 = [p = c.phi2](double x) { return p(-x); };
        std::vector<double> neg;
        for (double e : eta) neg.push_back(-e);
        const auto C = third_order_C(c, eta), R = third_order_C(r, neg);
        for (std::size_t i = 0; i < eta.size(); ++i)
            CHECK(std::abs(R[i] - static_cast<double>(sigma) * C[i]) < 1e-8 * max_abs(C));
    }
}

TEST_CASE("simulated mean profile: second-order remainder shrinks with the coupling") {
    const auto eta = eta_grid();
    std::vector<double> rem;
    for (double a : {0.02, 0.01}) {
        ExpansionRun run;
        run.alpha_c = a;
        const auto g = second_order_limit(run.expansion(), eta);
        rem.push_back(max_diff(mean_shift(run, eta), g));
    }
    CHECK(rem[0] / rem[1] > 3.0);
    CHECK(rem[0] / rem[1] < 6.0);
}

TEST_CASE("simulated heteroclinic shift follows the third-order prediction") {
    const auto eta = eta_grid();
    const auto rep = heteroclinic_test(hetero_run(), eta);
    CHECK(rep.above_noise);
    CHECK(rep.scaling_ratio > 6.0);
    CHECK(rep.scaling_ratio < 10.0);
    CHECK(rep.sign_agrees);
    // leading order in alpha_c: within 25% of the prediction at its extremum
    std::size_t star = 0;
    for (std::size_t i = 0; i < eta.size(); ++i)
        if (std::abs(rep.predicted[i]) > std::abs(rep.predicted[star])) star = i;
    CHECK(std::abs(rep.delta[star] - rep.predicted[star]) < 0.25 * std::abs(rep.predicted[star]));
}

TEST_CASE("even perturbation has no heteroclinic shift") {
    ExpansionRun run = hetero_run();
    run.odd = false;
    run.modes = {{1, 0.1, 0.0}, {2, 0.1, 0.0}};
    const auto rep = heteroclinic_test(run, eta_grid());
    CHECK(rep.delta_max <= rep.noise_floor);
    CHECK(rep.inconclusive);
}

TEST_CASE("expansion configuration errors") {
    ExpansionConfig c = skewed();
    c.sigma = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = skewed();
    c.horizon = 2.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = skewed();
    CHECK_THROWS_AS(u1_volterra(c, 0.01, 1.0), ConfigError);
    ExpansionRun r;
    r.modes = {{3, 0.1, 0.0}};
    CHECK_THROWS_AS(r.validate(), ConfigError);
    r = ExpansionRun{};
    r.grid.x.L = 2.0;
    CHECK_THROWS_AS(r.sim(), ConfigError);
}
