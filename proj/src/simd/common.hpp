#pragma once

#include "landau/simd/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace landau::simd::detail {
namespace { // internal linkage: each backend TU keeps its own copy

// Explicit product so both backends round identically (no __muldc3 path).
inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx fold(const cplx acc[4]) { return (acc[0] + acc[2]) + (acc[1] + acc[3]); }
inline double fold(const double acc[4]) { return (acc[0] + acc[2]) + (acc[1] + acc[3]); }

inline double abs_of(cplx x) { return std::sqrt(x.real() * x.real() + x.imag() * x.imag()); }

inline double lattice_term(long k, long l, double c, double tau, double a, double b,
                           const double* pen) {
    const double dl = static_cast<double>(l);
    const long d = std::labs(k - l);
    return -a * std::fabs(dl) - b * static_cast<double>(d) - a * std::fabs(c + dl * tau) - pen[d];
}

} // namespace
} // namespace landau::simd::detail
