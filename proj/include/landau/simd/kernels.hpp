#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and an AVX2 variant; both use the same operation order
// (no FMA, fixed 4-lane reduction tree), so results are bit-identical.

#include <complex>
#include <cstddef>
#include <string_view>

namespace landau::simd {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    // x[i] *= w[i]
    void (*cmul)(cplx* x, const cplx* w, std::size_t n);
    // x[i] *= w
    void (*cscale)(cplx* x, cplx w, std::size_t n);
    // t = b[i]*w[i]; b[i] = a[i]-t; a[i] = a[i]+t
    void (*butterfly)(cplx* a, cplx* b, const cplx* w, std::size_t n);
    // same with one twiddle for the whole run
    void (*butterfly_bcast)(cplx* a, cplx* b, cplx w, std::size_t n);
    cplx (*csum)(const cplx* x, std::size_t n);
    // sum x[i]*w[i]
    cplx (*cdot)(const cplx* x, const cplx* w, std::size_t n);
    // sum |x[i]|*w[i]
    double (*abs_wsum)(const cplx* x, const double* w, std::size_t n);
    // max |x[i]|*w[i]
    double (*abs_wmax)(const cplx* x, const double* w, std::size_t n);
    // max over l in [lo, hi], l != 0, of
    //   -a*|l| - b*|k-l| - a*|c + l*tau| - pen[|k-l|]
    double (*lattice_max)(long k, double c, double tau, double a, double b,
                          const double* pen, long lo, long hi);
};

enum class Backend { Scalar, Avx2 };

const KernelTable& scalar_kernels();
// nullptr when the build or CPU lacks AVX2
const KernelTable* avx2_kernels();

// Active table: AVX2 when available unless forced to scalar.
const KernelTable& kernels();
void force_backend(Backend b);
bool avx2_available();

} // namespace landau::simd
