#include "landau/profiles.hpp"

#include "landau/error.hpp"

#include <cmath>
#include <numbers>

namespace landau {

namespace {
constexpr double pi = std::numbers::pi;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(what) + " must be positive and finite");
}
} // namespace

VelocityProfile VelocityProfile::mixture(std::string name, std::vector<Gaussian> parts) {
    if (parts.empty()) throw ConfigError("profile mixture needs at least one component");
    VelocityProfile p;
    p.name_ = std::move(name);
    for (const auto& g : parts) {
        if (g.weight < 0.0) throw ConfigError("profile component has negative weight");
        require_positive(g.T, "profile temperature");
    }
    p.parts_ = std::move(parts);
    p.lambda0_ = 1.0;
    p.c0_ = 0.0;
    for (const auto& g : p.parts_) p.c0_ += g.weight * std::exp(p.lambda0_ * p.lambda0_ / (2.0 * g.T));
    return p;
}

VelocityProfile VelocityProfile::maxwellian(double rho0, double T) {
    require_positive(rho0, "rho0");
    require_positive(T, "temperature");
    return mixture("maxwellian", {{rho0, T, 0.0}});
}

VelocityProfile VelocityProfile::cauchy() {
    VelocityProfile p;
    p.name_ = "cauchy";
    p.cauchy_ = true;
    p.lambda0_ = 1.0;
    p.c0_ = pi;
    return p;
}

VelocityProfile VelocityProfile::two_bump(double a, double w_plus, double w_minus, double T) {
    if (a < 0.0) throw ConfigError("two_bump offset must be nonnegative");
    return mixture("two_bump", {{w_plus, T, a}, {w_minus, T, -a}});
}

double VelocityProfile::mass() const {
    if (cauchy_) return pi;
    double m = 0.0;
    for (const auto& g : parts_) m += g.weight;
    return m;
}

double VelocityProfile::f0(double v) const {
    if (cauchy_) return 1.0 / (1.0 + v * v);
    double s = 0.0;
    for (const auto& g : parts_) {
        const double u = v - g.center;
        s += g.weight * std::exp(-u * u / (2.0 * g.T)) / std::sqrt(2.0 * pi * g.T);
    }
    return s;
}

double VelocityProfile::f0_prime(double v) const {
    if (cauchy_) return -2.0 * v / ((1.0 + v * v) * (1.0 + v * v));
    double s = 0.0;
    for (const auto& g : parts_) {
        const double u = v - g.center;
        s += -u / g.T * g.weight * std::exp(-u * u / (2.0 * g.T)) / std::sqrt(2.0 * pi * g.T);
    }
    return s;
}

double VelocityProfile::f0_second(double v) const {
    if (cauchy_) {
        const double q = 1.0 + v * v;
        return (6.0 * v * v - 2.0) / (q * q * q);
    }
    double s = 0.0;
    for (const auto& g : parts_) {
        const double u = v - g.center;
        s += (u * u / (g.T * g.T) - 1.0 / g.T) * g.weight * std::exp(-u * u / (2.0 * g.T)) /
             std::sqrt(2.0 * pi * g.T);
    }
    return s;
}

cplx VelocityProfile::f0_tilde(cplx eta) const {
    if (cauchy_) {
        const cplx s = eta.real() >= 0.0 ? eta : -eta;
        return pi * std::exp(-2.0 * pi * s);
    }
    cplx s = 0.0;
    const cplx i{0.0, 1.0};
    for (const auto& g : parts_)
        s += g.weight * std::exp(-2.0 * i * pi * eta * g.center - 2.0 * pi * pi * g.T * eta * eta);
    return s;
}

cplx VelocityProfile::f0_tilde(double eta) const {
    if (cauchy_) return pi * std::exp(-2.0 * pi * std::fabs(eta));
    cplx s = 0.0;
    for (const auto& g : parts_)
        s += g.weight * std::exp(-2.0 * pi * pi * g.T * eta * eta) * std::polar(1.0, -2.0 * pi * eta * g.center);
    return s;
}

Marginal marginal(const VelocityProfile& p, long k) {
    if (k == 0) throw DomainError("marginal needs a nonzero mode");
    return {p, k > 0 ? 1 : -1};
}

Interaction Interaction::gravitational(double G) {
    require_positive(G, "G");
    Interaction w;
    w.kind_ = Kind::Gravitational;
    w.name_ = "gravitational";
    w.param_ = G;
    w.cw_ = G / pi;
    return w;
}

Interaction Interaction::electrostatic(double e2) {
    require_positive(e2, "e2");
    Interaction w;
    w.kind_ = Kind::Electrostatic;
    w.name_ = "electrostatic";
    w.param_ = e2;
    w.cw_ = e2 / pi;
    return w;
}

Interaction Interaction::screened_analytic(double sigma) {
    require_positive(sigma, "sigma");
    Interaction w;
    w.kind_ = Kind::Screened;
    w.name_ = "screened_analytic";
    w.param_ = sigma;
    w.cw_ = std::exp(-sigma) / pi;
    return w;
}

Interaction Interaction::power_law(double gamma, double cw) {
    if (!(gamma >= 1.0)) throw ConfigError("power_law interaction requires gamma >= 1");
    require_positive(cw, "C_W");
    Interaction w;
    w.kind_ = Kind::PowerLaw;
    w.name_ = "power_law";
    w.param_ = cw;
    w.gamma_ = gamma;
    w.cw_ = cw;
    return w;
}

Interaction Interaction::table(std::map<long, double> values) {
    Interaction w;
    w.kind_ = Kind::Table;
    w.name_ = "table";
    for (const auto& [k, v] : values) {
        if (k <= 0) throw ConfigError("interaction table keys must be positive modes");
        if (!std::isfinite(v)) throw ConfigError("interaction table value is not finite");
        w.cw_ = std::max(w.cw_, static_cast<double>(k * k) * std::fabs(v));
    }
    w.table_ = std::move(values);
    return w;
}

Interaction Interaction::none() { return Interaction{}; }

double Interaction::c_w() const { return std::fabs(scale_) * cw_; }

Coupling Interaction::coupling() const {
    switch (kind_) {
    case Kind::Gravitational: return Coupling::Attractive;
    case Kind::Table: {
        bool pos = false, neg = false;
        for (const auto& [k, v] : table_) (v > 0 ? pos : neg) |= v != 0.0;
        if (pos && neg) return Coupling::Mixed;
        return (neg != (scale_ < 0)) ? Coupling::Attractive : Coupling::Repulsive;
    }
    default: return scale_ < 0 ? Coupling::Attractive : Coupling::Repulsive;
    }
}

double Interaction::w_hat(double xi) const {
    if (xi == 0.0) return 0.0;
    const double a = std::fabs(xi);
    double w = 0.0;
    switch (kind_) {
    case Kind::Gravitational: w = -param_ / (pi * a * a); break;
    case Kind::Electrostatic: w = param_ / (pi * a * a); break;
    case Kind::Screened: {
        const double m = std::max(a, 1.0);
        w = std::exp(-param_ * a) / (pi * m * m);
        break;
    }
    case Kind::PowerLaw: w = param_ / std::pow(a, 1.0 + gamma_); break;
    case Kind::Table: {
        const double r = std::round(a);
        if (r != a) return 0.0;
        const auto it = table_.find(static_cast<long>(r));
        w = it == table_.end() ? 0.0 : it->second;
        break;
    }
    case Kind::None: return 0.0;
    }
    return scale_ * w;
}

Interaction Interaction::scaled(double s) const {
    if (!std::isfinite(s)) throw ConfigError("interaction scale is not finite");
    Interaction w = *this;
    w.scale_ *= s;
    return w;
}

double jeans_length(double G, double T, double rho0) {
    require_positive(G, "G");
    require_positive(T, "T");
    require_positive(rho0, "rho0");
    return std::sqrt(pi * T / (G * rho0));
}

double debye_length(double e2, double T, double rho0) { return jeans_length(e2, T, rho0); }

} // namespace landau
