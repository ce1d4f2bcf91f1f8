#include "landau/special.hpp"

#include "landau/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace landau {

namespace {

constexpr int N = 64;
constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

struct Weideman {
    double L;
    std::array<double, N> c{}; // p(Z) = sum_j c[j] Z^j

    Weideman() {
        constexpr int M = 2 * N, M2 = 2 * M;
        L = std::sqrt(N / std::sqrt(2.0));
        // f over k = -M..M-1 (f(-M) = 0), fftshifted so index 0 holds k = 0.
        std::vector<cplx> f(M2, 0.0);
        for (int k = -M + 1; k < M; ++k) {
            const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
            f[static_cast<std::size_t>((k + M2) % M2)] = std::exp(-t * t) * (L * L + t * t);
        }
        Fft(M2).forward(f.data());
        for (int j = 0; j < N; ++j) c[j] = f[static_cast<std::size_t>(j + 1)].real() / M2;
    }
};

const Weideman& table() {
    static const Weideman w;
    return w;
}

cplx upper(cplx z) {
    if (std::abs(z) > 12.0) {
        // w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
        cplx d = z;
        for (int n = 40; n >= 1; --n) d = z - (0.5 * n) / d;
        return cplx(0.0, inv_sqrt_pi) / d;
    }
    const auto& w = table();
    const cplx iz(-z.imag(), z.real());
    const cplx den = w.L - iz;
    const cplx Z = (w.L + iz) / den;
    cplx p = 0.0;
    for (int j = N - 1; j >= 0; --j) p = p * Z + w.c[j];
    return 2.0 * p / (den * den) + inv_sqrt_pi / den;
}

} // namespace

cplx faddeeva(cplx z) {
    if (z.imag() >= 0.0) return upper(z);
    return 2.0 * std::exp(-z * z) - upper(-z);
}

} // namespace landau
