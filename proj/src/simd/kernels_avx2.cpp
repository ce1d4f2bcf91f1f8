#include "common.hpp"

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>

// Target attributes instead of a TU-wide -mavx2, so no AVX2 code can leak
// into shared inline definitions.
#define LANDAU_AVX2 __attribute__((target("avx2")))

#include <limits>

namespace landau::simd {
namespace {

using detail::mul;

inline double dmax(double a, double b) { return a < b ? b : a; }

// (ar*br - ai*bi, ai*br + ar*bi) on two packed complex values; matches detail::mul bitwise.
LANDAU_AVX2 inline __m256d vmul(__m256d a, __m256d b) {
    const __m256d bre = _mm256_movedup_pd(b);
    const __m256d bim = _mm256_permute_pd(b, 0xF);
    const __m256d asw = _mm256_permute_pd(a, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a, bre), _mm256_mul_pd(asw, bim));
}

LANDAU_AVX2 inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
LANDAU_AVX2 inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

LANDAU_AVX2 void cmul(cplx* x, const cplx* w, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(x + i, vmul(load(x + i), load(w + i)));
    for (; i < n; ++i) x[i] = mul(x[i], w[i]);
}

LANDAU_AVX2 void cscale(cplx* x, cplx w, std::size_t n) {
    const __m256d wv = _mm256_setr_pd(w.real(), w.imag(), w.real(), w.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store(x + i, vmul(load(x + i), wv));
    for (; i < n; ++i) x[i] = mul(x[i], w);
}

LANDAU_AVX2 void butterfly(cplx* a, cplx* b, const cplx* w, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = load(a + i);
        const __m256d t = vmul(load(b + i), load(w + i));
        store(b + i, _mm256_sub_pd(av, t));
        store(a + i, _mm256_add_pd(av, t));
    }
    for (; i < n; ++i) {
        const cplx t = mul(b[i], w[i]);
        b[i] = a[i] - t;
        a[i] = a[i] + t;
    }
}

LANDAU_AVX2 void butterfly_bcast(cplx* a, cplx* b, cplx w, std::size_t n) {
    const __m256d wv = _mm256_setr_pd(w.real(), w.imag(), w.real(), w.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = load(a + i);
        const __m256d t = vmul(load(b + i), wv);
        store(b + i, _mm256_sub_pd(av, t));
        store(a + i, _mm256_add_pd(av, t));
    }
    for (; i < n; ++i) {
        const cplx t = mul(b[i], w);
        b[i] = a[i] - t;
        a[i] = a[i] + t;
    }
}

// Accumulator lanes: r0 holds elements 0,1 (mod 4), r1 holds 2,3.
LANDAU_AVX2 inline void spill(__m256d r0, __m256d r1, cplx acc[4]) {
    alignas(32) double t[8];
    _mm256_store_pd(t, r0);
    _mm256_store_pd(t + 4, r1);
    acc[0] = {t[0], t[1]};
    acc[1] = {t[2], t[3]};
    acc[2] = {t[4], t[5]};
    acc[3] = {t[6], t[7]};
}

LANDAU_AVX2 cplx csum(const cplx* x, std::size_t n) {
    __m256d r0 = _mm256_setzero_pd(), r1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        r0 = _mm256_add_pd(r0, load(x + i));
        r1 = _mm256_add_pd(r1, load(x + i + 2));
    }
    cplx acc[4];
    spill(r0, r1, acc);
    for (; i < n; ++i) acc[i & 3] += x[i];
    return detail::fold(acc);
}

LANDAU_AVX2 cplx cdot(const cplx* x, const cplx* w, std::size_t n) {
    __m256d r0 = _mm256_setzero_pd(), r1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        r0 = _mm256_add_pd(r0, vmul(load(x + i), load(w + i)));
        r1 = _mm256_add_pd(r1, vmul(load(x + i + 2), load(w + i + 2)));
    }
    cplx acc[4];
    spill(r0, r1, acc);
    for (; i < n; ++i) acc[i & 3] += mul(x[i], w[i]);
    return detail::fold(acc);
}

// |x| for four consecutive elements, lanes ordered as elements (0,2,1,3).
LANDAU_AVX2 inline __m256d abs4(const cplx* x) {
    const __m256d a = load(x), b = load(x + 2);
    return _mm256_sqrt_pd(_mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
}

LANDAU_AVX2 double abs_wsum(const cplx* x, const double* w, std::size_t n) {
    __m256d r = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
        r = _mm256_add_pd(r, _mm256_mul_pd(abs4(x + i), wv));
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, r);
    double acc[4] = {t[0], t[2], t[1], t[3]};
    for (; i < n; ++i) acc[i & 3] += detail::abs_of(x[i]) * w[i];
    return detail::fold(acc);
}

LANDAU_AVX2 double abs_wmax(const cplx* x, const double* w, std::size_t n) {
    __m256d r = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
        r = _mm256_max_pd(r, _mm256_mul_pd(abs4(x + i), wv));
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, r);
    double m = dmax(dmax(t[0], t[1]), dmax(t[2], t[3]));
    for (; i < n; ++i) m = dmax(m, detail::abs_of(x[i]) * w[i]);
    return m;
}

LANDAU_AVX2 double lattice_max(long k, double c, double tau, double a, double b, const double* pen, long lo,
                   long hi) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
    const __m256d vc = _mm256_set1_pd(c), vt = _mm256_set1_pd(tau);
    const __m256d vk = _mm256_set1_pd(static_cast<double>(k));
    const __m256d ninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    const __m256d zero = _mm256_setzero_pd();
    const __m256i ik = _mm256_set1_epi64x(k);
    __m256d best = ninf;
    long l = lo;
    for (; l + 4 <= hi + 1; l += 4) {
        const double d0 = static_cast<double>(l);
        const __m256d dl = _mm256_setr_pd(d0, d0 + 1.0, d0 + 2.0, d0 + 3.0);
        const __m256i il = _mm256_setr_epi64x(l, l + 1, l + 2, l + 3);
        __m256i diff = _mm256_sub_epi64(ik, il);
        const __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), diff);
        diff = _mm256_sub_epi64(_mm256_xor_si256(diff, neg), neg);
        const __m256d p = _mm256_i64gather_pd(pen, diff, 8);
        const __m256d ad = _mm256_andnot_pd(sign, _mm256_sub_pd(vk, dl));
        const __m256d al = _mm256_andnot_pd(sign, dl);
        const __m256d ar = _mm256_andnot_pd(sign, _mm256_add_pd(vc, _mm256_mul_pd(dl, vt)));
        __m256d v = _mm256_sub_pd(_mm256_xor_pd(sign, _mm256_mul_pd(va, al)), _mm256_mul_pd(vb, ad));
        v = _mm256_sub_pd(_mm256_sub_pd(v, _mm256_mul_pd(va, ar)), p);
        v = _mm256_blendv_pd(v, ninf, _mm256_cmp_pd(dl, zero, _CMP_EQ_OQ));
        best = _mm256_max_pd(best, v);
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, best);
    double m = dmax(dmax(t[0], t[1]), dmax(t[2], t[3]));
    for (; l <= hi; ++l) {
        if (l == 0) continue;
        m = dmax(m, detail::lattice_term(k, l, c, tau, a, b, pen));
    }
    return m;
}

} // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable t{"avx2", cmul,     cscale,   butterfly, butterfly_bcast,
                               csum,   cdot,     abs_wsum, abs_wmax,  lattice_max};
    return &t;
}

} // namespace landau::simd

#else

namespace landau::simd {
const KernelTable* avx2_kernels() { return nullptr; }
} // namespace landau::simd

#endif
