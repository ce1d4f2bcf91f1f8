#include "common.hpp"

#include <limits>

namespace landau::simd {
namespace {

using detail::mul;

void cmul(cplx* x, const cplx* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = mul(x[i], w[i]);
}

void cscale(cplx* x, cplx w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = mul(x[i], w);
}

void butterfly(cplx* a, cplx* b, const cplx* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx t = mul(b[i], w[i]);
        b[i] = a[i] - t;
        a[i] = a[i] + t;
    }
}

void butterfly_bcast(cplx* a, cplx* b, cplx w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx t = mul(b[i], w);
        b[i] = a[i] - t;
        a[i] = a[i] + t;
    }
}

cplx csum(const cplx* x, std::size_t n) {
    cplx acc[4] = {};
    for (std::size_t i = 0; i < n; ++i) acc[i & 3] += x[i];
    return detail::fold(acc);
}

cplx cdot(const cplx* x, const cplx* w, std::size_t n) {
    cplx acc[4] = {};
    for (std::size_t i = 0; i < n; ++i) acc[i & 3] += mul(x[i], w[i]);
    return detail::fold(acc);
}

double abs_wsum(const cplx* x, const double* w, std::size_t n) {
    double acc[4] = {};
    for (std::size_t i = 0; i < n; ++i) acc[i & 3] += detail::abs_of(x[i]) * w[i];
    return detail::fold(acc);
}

double abs_wmax(const cplx* x, const double* w, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, detail::abs_of(x[i]) * w[i]);
    return m;
}

double lattice_max(long k, double c, double tau, double a, double b, const double* pen, long lo,
                   long hi) {
    double m = -std::numeric_limits<double>::infinity();
    for (long l = lo; l <= hi; ++l) {
        if (l == 0) continue;
        m = std::max(m, detail::lattice_term(k, l, c, tau, a, b, pen));
    }
    return m;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable t{"scalar", cmul,     cscale,   butterfly,  butterfly_bcast,
                               csum,     cdot,     abs_wsum, abs_wmax,   lattice_max};
    return t;
}

} // namespace landau::simd
