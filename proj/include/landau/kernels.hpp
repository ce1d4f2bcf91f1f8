#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace landau {

// Echo-response kernels on the lattice k, l in Z \ {0} (dimension one):
//
//   Kbar(t,tau)   = (1+tau) sup e^{-a|l|} e^{-a|k-l|} e^{-a|k(t-tau)+l tau|}
//   Kgamma(t,tau) = (1+tau) sup e^{-a|l|} e^{-a (t-tau)/t |k-l|} e^{-a|k(t-tau)+l tau|} / (1+|k-l|^g)
//   Kmode(k,l)    = the single (k,l) term of Kgamma
enum class KernelFamily { Kbar, Kgamma, Kmode };
std::string_view to_string(KernelFamily f);
KernelFamily kernel_family_from_string(std::string_view s);

struct KernelSpec {
    KernelFamily family = KernelFamily::Kgamma;
    double alpha = 0.2;
    double gamma = 1.0;
    // 0: exact lattice sup. > 0: lattice truncated to |k|, |l| <= k_max, which keeps only the
    // resonances k(t-tau) + l tau = 0 with small indices and changes the large-t asymptotics.
    int k_max = 0;

    void validate() const;
};

double kernel_Kbar(double t, double tau, double alpha);
double kernel_Kgamma(double t, double tau, double alpha, double gamma);
double kernel_Kmode(long k, long l, double t, double tau, double alpha, double gamma);

// Sup over the truncated box |k|, |l| <= k_max (vectorized lattice scan).
double kernel_truncated(KernelFamily family, double t, double tau, double alpha, double gamma, int k_max);

// Kbar or Kgamma as selected by spec.family (Kmode needs explicit indices).
double kernel_value(const KernelSpec& spec, double t, double tau);

struct MomentValue {
    double value = 0.0;
    double error = 0.0;     // quadrature error estimate
    bool resolved = true;   // false: refinement cap hit, value is only indicative
    int breakpoints = 0;    // resonance panels used
};

// e^{-eps t} int_0^t K(t,tau) e^{eps tau} dtau
MomentValue exp_moment(const KernelSpec& spec, double eps, double t);
// (e^{-2 eps t} int_0^t K(t,tau)^2 e^{2 eps tau} dtau)^{1/2}
MomentValue l2_exp_moment(const KernelSpec& spec, double eps, double t);
// sup over a tau grid of e^{eps tau} int_tau^inf e^{-eps t} K(t,tau) dt; the integral runs to
// t_cap and the rest is bounded analytically.
struct DualMoment {
    double value = 0.0;
    double tau_at_sup = 0.0;
    double tail_bound = 0.0;
    bool resolved = true;
};
DualMoment dual_moment(const KernelSpec& spec, double eps, double t_cap, const std::vector<double>& tau_grid);

// Left-hand sides of the three mode-by-mode moment estimates, sup over 1 <= k <= k_max:
//   m1 = sup_k sum_l e^{-eps t} int_0^t K_kl e^{eps tau} dtau
//   m2 = sup_k sum_l e^{-eps t} (int_0^t K_kl^2 e^{2 eps tau} dtau)^{1/2}
//   m3 = sup_k sum_l sup_{tau in grid} e^{eps tau} int_tau^inf K_kl e^{-eps t'} dt'
struct ModeMoments {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    long k_at_sup = 0;      // argmax for m1; near k_max means the sup may lie beyond the range
    bool resolved = true;
};
ModeMoments mode_moments(double alpha, double gamma, double eps, double t, long k_max,
                         const std::vector<double>& tau_grid = {});

// Bound shapes with every constant set to 1 (only ratios along a parameter axis are meaningful).
double exp_moment_bound(double alpha, double gamma, double eps, double t);
double l2_exp_moment_bound(double alpha, double gamma, double eps, double t); // of the square root
double dual_moment_bound(double alpha, double gamma, double eps);
double mode_moment_bound(int which, double alpha, double gamma, double eps, double t);

// Power-series solutions of the scalar and mode-by-mode growth models.
enum class BabyModel { A, B, Mode };

struct BabySeries {
    BabyModel model = BabyModel::A;
    double a = 1.0, c = 0.0, gamma = 1.0;
    double decay = 0.0;   // Mode: A_k = a e^{-decay k}
    int order = 0;        // truncation M
    // A, B: coeffs[0][n]; Mode: coeffs[k-1][m] for k = 1..rows
    std::vector<std::vector<double>> coeffs;

    // phi(t) (A, B) or phi_k(t) (Mode)
    double eval(double t, long k = 1) const;
    // Defect of the defining functional equation at t (for Mode, at mode k).
    double residual(double t, long k = 1) const;
};

BabySeries baby_phi(double a, double c, int M);
BabySeries baby_b(double a, double c, double gamma, int M);
BabySeries baby_mode(double a, double decay, double c, double gamma, int M, long modes);

// sum_{k>=1} k^{-(1+gamma)} (1 - 1/k)^n to machine precision.
double baby_b_inner_sum(int n, double gamma);

} // namespace landau
