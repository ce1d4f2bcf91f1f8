#pragma once

#include "landau/field.hpp"
#include "landau/profiles.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace landau {

// Background, interaction and box length: everything the linearized problem depends on.
struct LinearSetup {
    VelocityProfile f0;
    Interaction w;
    double L = 1.0;
};

// K0(t,k) = -4 pi^2 W^(L)(k) f0~(kt/L) (k/L)^2 t.
cplx kernel_K0(const LinearSetup& s, double t, long k);

// L(xi,k) = int_0^inf exp(2 pi conj(xi) |k| t / L) K0(t,k) dt, via s = |k| t / L:
// L = -4 pi^2 W^(L)(k) int_0^inf exp(2 pi conj(xi) s) f0~(sign(k) s) s ds.
// Closed form for the catalogue (Faddeeva function per Gaussian component, rational
// for Cauchy). Throws DomainError when the integral diverges (Cauchy, Re xi >= lambda0).
cplx laplace_L(const LinearSetup& s, cplx xi, long k);

// The same integral by adaptive Gauss-Kronrod on [0, S] plus a certified tail bound.
struct QuadLaplace {
    cplx value{};
    double error = 0.0; // quadrature estimate + tail bound
};
QuadLaplace laplace_L_quadrature(const LinearSetup& s, cplx xi, long k);

struct LaplaceValue {
    cplx value;   // L(xi,k)
    cplx d_dzeta; // derivative with respect to zeta = conj(xi)
};
LaplaceValue laplace_L_derivative(const LinearSetup& s, cplx xi, long k);

// M such that |L(xi,k)| <= M / (2 pi |xi|) whenever Re xi <= gamma (one integration by parts).
double laplace_decay_constant(const LinearSetup& s, double gamma, long k);
// R with |xi| <= R for every root of L(xi,k) = 1 with Re xi <= gamma.
double laplace_root_radius(const LinearSetup& s, double gamma, long k);
// Upper bound on |L(xi,k)| over Re xi <= gamma.
double laplace_modulus_bound(const LinearSetup& s, double gamma, long k);

enum class Status { Pass, Fail, Inconclusive };
std::string_view to_string(Status s);

struct CriterionResult {
    Status status = Status::Inconclusive;
    double value = 0.0; // quantity compared against 1 (or the worst sample)
    std::string detail;
};

// (a) 4 pi^2 max_k |W^(L)(k)| int_0^inf |f0~(r)| r dr < 1
CriterionResult criterion_smallness(const LinearSetup& s);
// (b) W^(L) >= 0 for every k and v phi_k'(v) < 0 for v != 0
CriterionResult criterion_monotone(const LinearSetup& s);
// (c) W^(L)(k) p.v. int phi_k'(v)/(v - w) dv < 1 at every critical point w of phi_k
CriterionResult criterion_penrose(const LinearSetup& s);

// p.v. int phi'(v)/(v - w) dv: symmetric exclusion of (w-h, w+h) plus the 2 h phi''(w) correction.
double principal_value(const Marginal& m, double w, double h = 1e-3);

struct CriticalPoints {
    std::vector<double> points;
    bool inconclusive = false; // a near-zero of phi' without a sign change was seen
};
CriticalPoints critical_points(const Marginal& m);

enum class Verdict { Stable, Unstable, Inconclusive };
std::string_view to_string(Verdict v);

struct DispersionRoot {
    long k = 0;
    std::optional<cplx> xi;   // root of L(xi,k) = 1 in the convention of laplace_L
    double growth_rate = 0.0; // -2 pi Re(xi) |k| / L; negative means damping
    double frequency = 0.0;   //  2 pi Im(xi) |k| / L
    double residual = 0.0;    // |L(xi,k) - 1|
    std::string diagnostic;

    bool found() const { return xi.has_value(); }
    double decay_rate() const { return -growth_rate; }
};

struct RootSearchBox {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -2.0, im_max = 2.0;
    int n_re = 24, n_im = 48;
};

// All roots found in the box (argument-principle cell scan + Newton in conj(xi)), sorted by
// decreasing growth rate, then decreasing frequency.
std::vector<DispersionRoot> dispersion_roots(const LinearSetup& s, long k, const RootSearchBox& box);
// Dominant root (largest growth rate) or an empty result with a diagnostic.
DispersionRoot dispersion_root(const LinearSetup& s, long k, const RootSearchBox& box);
// Box that provably contains every root with Re xi in [re_min, re_max].
RootSearchBox default_root_box(const LinearSetup& s, long k, double re_max);

struct ScanOptions {
    double lambda = 0.1;   // strip 0 <= Re xi < lambda
    int n_gamma = 5;
    int n_omega = 201;     // samples over [-omega_max, omega_max]
    long k_max = 8;
    double kappa_tol = 0.05;
    bool growth_search = true; // also look for roots with Re xi < 0
};

struct StabilityReport {
    Verdict verdict = Verdict::Inconclusive;
    double kappa_min = 0.0;
    double lambda_scan = 0.0;
    cplx worst_xi{};
    long worst_k = 0;
    double omega_max = 0.0;
    bool coarse = false; // adjacent scan samples differed by more than kappa_tol
    std::optional<DispersionRoot> growing;
    CriterionResult smallness, monotone, penrose;
};

StabilityReport check_condition_L(const LinearSetup& s, const ScanOptions& opt = {});

// rho^(t_j, k) on t_j = j dt, j = 0..n, for |k| <= k_max.
struct VolterraSolution {
    double dt = 0.0;
    double horizon = 0.0;
    long k_max = 0;
    double L = 1.0;
    std::vector<std::vector<cplx>> modes; // modes[k + k_max][j]

    std::size_t steps() const { return modes.empty() ? 0 : modes.front().size() - 1; }
    double time(std::size_t j) const { return static_cast<double>(j) * dt; }
    const std::vector<cplx>& mode(long k) const { return modes.at(static_cast<std::size_t>(k + k_max)); }
    std::vector<double> times() const;
};

// a(t,k) = f_i~(k, kt/L)
using VolterraSource = std::function<cplx(double t, long k)>;
// Band-limited source read off a field (any representation; converted once).
VolterraSource source_from_field(const DistributionField& fi);

VolterraSolution solve_volterra(const LinearSetup& s, const VolterraSource& a, double dt, double horizon, long k_max);

// Linearized field h(t) = f(t) - f0 stepped on the Volterra time grid:
// h^(t,k,v) = exp(-2 i pi k v t/L) h_i^(k,v) + 2 i pi (k/L) W^(L)(k) f0'(v) int_0^t exp(-2 i pi k v (t-s)/L) rho^(s,k) ds
// with the time integral by the same trapezoid rule as the Volterra solve. Modes beyond
// k_max of the solution stay freely transported; mode 0 is constant.
class LinearEvolution {
public:
    LinearEvolution(const LinearSetup& s, const VolterraSolution& sol, const DistributionField& fi);

    std::size_t step_index() const { return n_; }
    double time() const { return sol_->time(n_); }
    void advance();
    // f(t_n) in mixed representation (includes the k = 0 row of fi).
    DistributionField field() const;

private:
    LinearSetup s_;
    const VolterraSolution* sol_;
    DistributionField fi_;      // mixed
    std::vector<cplx> memory_;  // trapezoid memory I(t,k,v), rows 0..nx-1
    std::vector<cplx> rotor_;   // exp(-2 i pi k v dt / L)
    std::vector<cplx> drive_;   // 2 i pi (k/L) W f0'(v) per (k,v)
    std::size_t n_ = 0;
};

// Fields at the requested step indices (ascending).
std::vector<DistributionField> reconstruct_f(const LinearSetup& s, const VolterraSolution& sol,
                                             const DistributionField& fi, std::span<const std::size_t> steps);

struct DecayFit {
    double rate = 0.0;      // decay rate (positive = decaying)
    double frequency = 0.0; // angular frequency
    double residual = 0.0;  // rms of the log-envelope fit
    std::size_t maxima = 0; // envelope maxima used (0 = fallback all-sample fit)
    bool exponential = true; // residual below threshold
};

// Log-linear fit of the envelope maxima of |series| on t in [t_begin, t_end].
// Monotone series fall back to fitting all samples; 1 to 4 maxima is insufficient data.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const cplx> series, double t_begin, double t_end,
                        double residual_threshold = 0.05);

} // namespace landau
