#pragma once

#include "landau/field.hpp"
#include "landau/nonlinear.hpp"

#include <functional>
#include <string>
#include <vector>

namespace landau {

// Perturbative expansion around f0(v) = exp(-pi v^2) on the unit box, interaction alpha_c W with
// W^(+-1) = w1, W^(+-2) = w2.
//   simple excitation:  f_i - f0 = eps cos(2 pi x) theta(v),  phi = theta~
//   general excitation: eps phi_k(eta) = (f_i - f0)~(k, eta) for k = +-1, +-2, phi_{-k} = sigma phi_k
struct ExpansionConfig {
    using Profile = std::function<cplx(double)>;

    double eps = 0.01;
    double alpha_c = 0.05;
    Profile phi;
    Profile phi1, phi2;
    int sigma = -1;
    double w1 = 1.0, w2 = 0.0;
    double horizon = 8.0;   // T_q: the profiles are negligible beyond |eta| = T_q
    double tol = 1e-9;      // relative quadrature tolerance

    // phi_k for k in {-2..2}; zero at k = 0 and beyond the two retained modes
    cplx phi_k(long k, double eta) const;
    double w(long k) const;
    void validate() const;
};

struct U1Series {
    std::vector<double> t;
    std::vector<cplx> u1, um1; // rho^[h^1](t, +1), rho^[h^1](t, -1)
};

// u(t) = (eps/2) phi(+-t) - 4 pi^2 alpha_c w1 int_0^t u(tau) exp(-pi (t-tau)^2) (t-tau) dtau,
// trapezoid marching on t_j = j dt.
U1Series u1_volterra(const ExpansionConfig& cfg, double dt, double T);

// Leading mean-profile correction g~(eta) = -eps^2 alpha_c pi^2 w1 eta int phi(t) phi(eta-t) sign(t) dt.
// Throws NumericalError when the part of the integral beyond T_q exceeds 1e-10.
std::vector<cplx> second_order_limit(const ExpansionConfig& cfg, const std::vector<double>& eta);

enum class PairSet {
    All,     // every (k, l) in {+-1, +-2}^2; pairs whose profiles vanish drop out
    Listed,  // (-1,1), (1,-1), (1,2), (2,1), (-1,-2), (-2,-1)
    W1Block  // |k| = |l| = 1 (the w1^2 terms)
};

// Third-order limit C[phi](eta) = 16 pi^4 eps^3 alpha_c^2 sum_{k,l} W(k) W(l)
//   int_0^inf int_0^t phi_l(l tau) { phi_{k-l}(kt - l tau) phi_{-k}(eta - kt) k l (t - tau)
//                                 + phi_k(kt) phi_{-k-l}(eta - kt - l tau) l (eta - k(t - tau)) } k eta dtau dt
// The w1 w2 pairs cancel the w1^2 pairs exactly at w1 = w2, so C is proportional to w1 (w1 - w2).
std::vector<cplx> third_order_C(const ExpansionConfig& cfg, const std::vector<double>& eta,
                                PairSet pairs = PairSet::All);

// The four-term w1^2 expression written out for the sin(2 pi x) theta_1 + sin(4 pi x) theta_2 example
// with phi_{-k} = -phi_k (kept for comparison with W1Block, which it does not reproduce term by term).
std::vector<cplx> third_order_displayed_block(const ExpansionConfig& cfg, const std::vector<double>& eta);

// Desk-scale simulation setup for the expansion checks: f_i - f0 = eps sum_m trig(2 pi k_m x) theta_m(v)
// with trig = cos (even) or sin (odd) and theta_m a Maxwellian (T_m, c_m).
struct ExpansionRun {
    struct Mode {
        long k = 1;
        double T = 0.15915494309189535; // 1/(2 pi): theta = f0
        double center = 0.0;
    };
    PhaseGrid grid{{1.0, 16}, {4.0, 256}};
    double dt = 0.01;
    double T = 6.0;
    double eps = 0.01;
    double alpha_c = 0.05;
    double w1 = 1.0, w2 = 0.0;
    std::vector<Mode> modes{Mode{}};
    bool odd = false;

    // reflected: datum composed with v -> -v (backward run as a forward one)
    SimConfig sim(bool reflected = false) const;
    // phi_k read off the datum; phi = theta~ of the k = 1 mode for the simple excitation
    ExpansionConfig expansion() const;
    void validate() const;
};

// (<f>(T) - <f_i>)~(eta), forward from the datum or from its reflection.
std::vector<cplx> mean_shift(const ExpansionRun& run, const std::vector<double>& eta, bool reflected = false);

struct HeteroclinicReport {
    std::vector<double> eta;
    std::vector<cplx> delta;       // (<f>_{+T} - <f>_{-T})~(eta)
    std::vector<cplx> predicted;   // C[phi] - C[phi o S] o S (third order)
    double delta_max = 0.0;        // max |delta|
    double noise_floor = 0.0;      // max |delta(dt) - delta(dt/2)|
    bool above_noise = false;
    double eta_star = 0.0;         // argmax |predicted|
    bool sign_agrees = false;      // Re(delta conj(predicted)) > 0 at eta_star
    double scaling_ratio = 0.0;    // max|delta(eps)| / max|delta(eps/2)|
    bool inconclusive = false;     // signal below the noise floor
    std::string detail;
};

HeteroclinicReport heteroclinic_test(const ExpansionRun& run, const std::vector<double>& eta);

} // namespace landau
