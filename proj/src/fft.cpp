#include "landau/fft.hpp"

#include "landau/error.hpp"
#include "landau/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace landau {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n), rev_(n), fwd_(n > 1 ? n - 1 : 0), inv_(fwd_.size()) {
    if (!is_power_of_two(n)) throw ConfigError("FFT length " + std::to_string(n) + " is not a power of two");
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        rev_[i] = r;
    }
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t j = 0; j < h; ++j) {
            const double a = std::numbers::pi * static_cast<double>(j) / static_cast<double>(h);
            const double c = std::cos(a), s = std::sin(a);
            fwd_[h - 1 + j] = {c, -s};
            inv_[h - 1 + j] = {c, s};
        }
}

void Fft::run(cplx* x, const std::vector<cplx>& tw) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap(x[i], x[rev_[i]]);
    const auto& k = simd::kernels();
    for (std::size_t h = 1; h < n_; h <<= 1)
        for (std::size_t s = 0; s < n_; s += 2 * h) k.butterfly(x + s, x + s + h, tw.data() + h - 1, h);
}

void Fft::run_rows(cplx* a, std::size_t row_len, const std::vector<cplx>& tw) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap_ranges(a + i * row_len, a + (i + 1) * row_len, a + rev_[i] * row_len);
    const auto& k = simd::kernels();
    for (std::size_t h = 1; h < n_; h <<= 1)
        for (std::size_t s = 0; s < n_; s += 2 * h)
            for (std::size_t j = 0; j < h; ++j)
                k.butterfly_bcast(a + (s + j) * row_len, a + (s + j + h) * row_len, tw[h - 1 + j], row_len);
}

} // namespace landau
