#pragma once

#include <complex>

namespace landau {

// Faddeeva function w(z) = exp(-z^2) erfc(-i z), entire. Weideman's rational
// expansion (N = 64) in the upper half plane, a Laplace continued fraction for
// large |z|, and w(z) = 2 exp(-z^2) - w(-z) below the real axis.
std::complex<double> faddeeva(std::complex<double> z);

} // namespace landau
