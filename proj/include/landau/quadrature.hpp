#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace landau {

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

// Globally adaptive Gauss-Kronrod (G10/K21) on [a, b], optionally split at
// interior breakpoints first. Intervals are refined largest-error first; ties
// resolve by position, so the result is deterministic.
QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opt = {}, const std::vector<double>& breakpoints = {});
QuadResult<std::complex<double>> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                   double b, const QuadOptions& opt = {},
                                                   const std::vector<double>& breakpoints = {});

} // namespace landau
