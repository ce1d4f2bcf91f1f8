#pragma once

#include <cstddef>

namespace landau {

// Periodic position grid on [0, L): nodes x_j = j L / nx.
struct TorusGrid {
    double L = 1.0;
    std::size_t nx = 16;

    void validate() const;
    double dx() const { return L / static_cast<double>(nx); }
    double node(std::size_t j) const { return static_cast<double>(j) * dx(); }
    // Signed Fourier mode stored at FFT-order index j.
    long mode(std::size_t j) const;
    // FFT-order index of signed mode k (|k| <= nx/2).
    std::size_t index(long k) const;

    bool operator==(const TorusGrid&) const = default;
};

// Truncated velocity grid v_m = -vmax + 2 vmax m / nv, periodic in the
// transform sense; dual nodes eta_q = q / (2 vmax).
struct VelocityGrid {
    double vmax = 8.0;
    std::size_t nv = 256;

    void validate() const;
    double dv() const { return 2.0 * vmax / static_cast<double>(nv); }
    double deta() const { return 0.5 / vmax; }
    double node(std::size_t m) const { return -vmax + static_cast<double>(m) * dv(); }
    long dual_index(std::size_t i) const;
    double eta(std::size_t i) const { return static_cast<double>(dual_index(i)) * deta(); }
    std::size_t index(long q) const;

    bool operator==(const VelocityGrid&) const = default;
};

struct PhaseGrid {
    TorusGrid x;
    VelocityGrid v;

    void validate() const {
        x.validate();
        v.validate();
    }
    std::size_t size() const { return x.nx * v.nv; }
    bool operator==(const PhaseGrid&) const = default;
};

} // namespace landau
