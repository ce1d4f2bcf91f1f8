#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

bool is_power_of_two(std::size_t n);

// In-place radix-2 transform of length n (power of two).
// forward: X_q = sum_m x_m e^{-2 pi i q m / n}; inverse uses e^{+...}, unnormalized.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(cplx* x) const { run(x, fwd_); }
    void inverse(cplx* x) const { run(x, inv_); }

    // Same transforms applied along the row index of a row-major
    // (n x row_len) array; every butterfly is a whole-row operation.
    void forward_rows(cplx* a, std::size_t row_len) const { run_rows(a, row_len, fwd_); }
    void inverse_rows(cplx* a, std::size_t row_len) const { run_rows(a, row_len, inv_); }

private:
    void run(cplx* x, const std::vector<cplx>& tw) const;
    void run_rows(cplx* a, std::size_t row_len, const std::vector<cplx>& tw) const;

    std::size_t n_;
    std::vector<std::size_t> rev_;
    // twiddles for half-size h stored at offset h-1, h entries each
    std::vector<cplx> fwd_, inv_;
};

} // namespace landau
