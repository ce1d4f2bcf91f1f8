#pragma once

#include "landau/field.hpp"

#include <span>
#include <string_view>

namespace landau {

// Discrete analytic norms. On band-limited grid data every one of them is finite (the
// interpolant is entire), so they measure the discrete solution, not the continuum field.
//
//   F: sum_k deta sum_q |f~(k,eta_q)| exp(2 pi lambda |k tau/L + eta_q|) exp(2 pi mu |k|)
//   Y: the same weights, sup instead of sum
//   Z: sum_l sum_{n<=N} lambda^n/n! exp(2 pi mu |l|) || (d_v + 2 i pi tau l/L)^n f^(l,.) ||_{L^p(v)}
//   C: one-variable series sum_{n<=N} lambda^n/n! ||g^(n)||_{L^p} of g = x-average of f
//
// x-coefficients are f^(l,v) = int_0^L f e^{-2 i pi l x/L} dx (the mixed representation);
// v-derivatives are spectral.
enum class NormFamily { C, F, Z, Y };
std::string_view to_string(NormFamily f);
NormFamily norm_family_from_string(std::string_view s);

enum class LpIndex { One, Two, Inf };
LpIndex lp_from_string(std::string_view s);
std::string_view to_string(LpIndex p);

struct NormSpec {
    NormFamily family = NormFamily::Z;
    double lambda = 0.0;
    double mu = 0.0;
    double tau = 0.0;
    LpIndex p = LpIndex::Inf;
    int n_max = 0;      // derivative-series truncation; 0 selects the smallest certified order
    // bound on the neglected tail sum_{n>N} (2 pi lambda eta_eff)^n / n!, eta_eff the shifted dual
    // radius of the data (entries below 1e-15 of the peak count as zero)
    double tol = 1e-12;

    void validate() const;
};

struct NormValue {
    double value = 0.0;
    bool overflow = false; // some weight exceeded exp(700); value is +inf
    int n_used = 0;        // series order actually summed (Z, C)
    double tail = 0.0;     // certified tail bound (relative to ||f||)
};

// Smallest N with sum_{n>N} x^n/n! < tol, and that tail.
std::pair<int, double> series_order(double x, double tol);

NormValue norm_F(const DistributionField& f, double lambda, double mu, double tau);
NormValue norm_Y(const DistributionField& f, double lambda, double mu, double tau);
NormValue norm_Z(const DistributionField& f, double lambda, double mu, double tau, LpIndex p, int n_max = 0,
                 double tol = 1e-12);
NormValue norm_C_onevar(std::span<const cplx> g, const VelocityGrid& grid, double lambda, LpIndex p, int n_max = 0,
                        double tol = 1e-12);

NormValue evaluate_norm(const NormSpec& spec, const DistributionField& f);

} // namespace landau
