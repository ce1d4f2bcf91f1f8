#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

// Homogeneous background f0(v), d = 1. Either a finite mixture of shifted
// Maxwellians or the Cauchy profile 1/(1+v^2).
class VelocityProfile {
public:
    struct Gaussian {
        double weight; // mass of this component
        double T;      // variance
        double center;
    };

    static VelocityProfile maxwellian(double rho0, double T);
    static VelocityProfile cauchy();
    // Equal-temperature bumps at +a (weight w_plus) and -a (weight w_minus).
    static VelocityProfile two_bump(double a, double w_plus, double w_minus, double T);
    static VelocityProfile mixture(std::string name, std::vector<Gaussian> parts);

    const std::string& name() const { return name_; }
    double mass() const;
    bool is_gaussian_mixture() const { return !cauchy_; }
    const std::vector<Gaussian>& components() const { return parts_; }

    double f0(double v) const;
    double f0_prime(double v) const;
    double f0_second(double v) const;
    cplx f0_tilde(double eta) const;
    // Transform extended to complex argument (entire for Gaussian mixtures,
    // |Im| < 1 for Cauchy).
    cplx f0_tilde(cplx eta) const;

    // |f0~(eta)| <= c0 exp(-2 pi lambda0 |eta|).
    double lambda0() const { return lambda0_; }
    double c0() const { return c0_; }
    // true when f0~ decays faster than any exponential (Gaussian mixtures)
    bool entire() const { return !cauchy_; }

private:
    std::string name_;
    std::vector<Gaussian> parts_;
    bool cauchy_ = false;
    double lambda0_ = 1.0;
    double c0_ = 0.0;
};

// Marginal of f0 along direction sign(k) (d = 1: a reflection for k < 0).
struct Marginal {
    VelocityProfile profile;
    int direction;

    double phi(double v) const { return profile.f0(direction * v); }
    double phi_prime(double v) const { return direction * profile.f0_prime(direction * v); }
    double phi_second(double v) const { return profile.f0_second(direction * v); }
};

Marginal marginal(const VelocityProfile& p, long k);

enum class Coupling { Attractive, Repulsive, Mixed };

// Even interaction potential described by its Fourier transform W^(xi) on R.
class Interaction {
public:
    static Interaction gravitational(double G);
    static Interaction electrostatic(double e2);
    static Interaction screened_analytic(double sigma);
    static Interaction power_law(double gamma, double cw);
    // Finitely supported multiplier: W^(+-k) = values[k] for listed k >= 1, zero elsewhere.
    static Interaction table(std::map<long, double> values);
    static Interaction none();

    const std::string& name() const { return name_; }
    double gamma() const { return gamma_; }
    double c_w() const;
    Coupling coupling() const;

    // W^(xi); xi = 0 returns 0 (mean field removed).
    double w_hat(double xi) const;
    // W^(L)(k) = W^(k / L).
    double w_hat_L(long k, double L) const { return w_hat(static_cast<double>(k) / L); }

    // Copy with the multiplier scaled by s.
    Interaction scaled(double s) const;
    double scale() const { return scale_; }

private:
    enum class Kind { Gravitational, Electrostatic, Screened, PowerLaw, Table, None };
    Kind kind_ = Kind::None;
    std::string name_ = "none";
    double param_ = 0.0; // G, e^2, sigma, or C_W
    double gamma_ = 1.0;
    double cw_ = 0.0;
    double scale_ = 1.0;
    std::map<long, double> table_;
};

double jeans_length(double G, double T, double rho0);
double debye_length(double e2, double T, double rho0);

} // namespace landau
