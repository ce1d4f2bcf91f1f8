#pragma once

#include "landau/grid.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

enum class Representation {
    Nodal,    // f(x_j, v_m)
    Mixed,    // f^(k, v_m), x-transform scaled by dx
    Spectral  // f~(k, eta_q), additionally v-transformed and scaled by dv
};

std::string_view to_string(Representation r);
Representation representation_from_string(std::string_view s);

class Interaction;

// Kinetic density on the phase grid, row-major (position/mode index outer,
// velocity/dual index inner). Mode and dual indices are in FFT order.
class DistributionField {
public:
    DistributionField() = default;
    DistributionField(PhaseGrid grid, Representation rep);

    static DistributionField from_function(PhaseGrid grid, const std::function<double(double, double)>& f);

    const PhaseGrid& grid() const { return grid_; }
    Representation representation() const { return rep_; }
    std::size_t rows() const { return grid_.x.nx; }
    std::size_t cols() const { return grid_.v.nv; }

    cplx& at(std::size_t row, std::size_t col) { return data_[row * cols() + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return data_[row * cols() + col]; }
    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols(), cols()}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols(), cols()}; }
    std::span<cplx> values() { return data_; }
    std::span<const cplx> values() const { return data_; }

    // Value-returning conversions; converting to the current representation copies.
    DistributionField to(Representation target) const;
    void convert(Representation target);

    DistributionField& operator+=(const DistributionField& o);
    DistributionField& operator-=(const DistributionField& o);
    DistributionField& operator*=(double s);

private:
    void nodal_to_mixed();
    void mixed_to_nodal();
    void mixed_to_spectral();
    void spectral_to_mixed();

    PhaseGrid grid_;
    Representation rep_ = Representation::Nodal;
    std::vector<cplx> data_;
};

DistributionField operator+(DistributionField a, const DistributionField& b);
DistributionField operator-(DistributionField a, const DistributionField& b);

// Spatial Fourier modes of the density, FFT order.
struct DensityModes {
    TorusGrid grid;
    std::vector<cplx> rho_hat;

    cplx at(long k) const { return rho_hat[grid.index(k)]; }
};

DistributionField to_spectral(const DistributionField& f);
DistributionField to_nodal(const DistributionField& f);
DistributionField to_mixed(const DistributionField& f);

// Exact free flow over time t (any sign); result keeps the input representation.
DistributionField free_transport(const DistributionField& f, double t);
// In-place variant on a mixed field.
void free_transport_mixed(DistributionField& f, double t);

DensityModes density(const DistributionField& f);

// Force modes F^(k) = -2 i pi (k/L) W^(L)(k) rho^(k), F^(0) = 0; FFT order.
std::vector<cplx> force_modes(const DensityModes& rho, const Interaction& w);
// Nodal force F(x_j) from its modes.
std::vector<double> force_nodal(const TorusGrid& g, std::span<const cplx> modes);

// Band-limited value of f~(k, eta) at arbitrary eta:
// dv * sum_m f^(k, v_m) exp(-2 i pi eta v_m). Needs a mixed field.
cplx transform_at(const DistributionField& mixed, long k, double eta);

// out[i] = exp(i (theta0 + i * dtheta)) for i < n.
void phase_ramp(cplx* out, std::size_t n, double theta0, double dtheta);

} // namespace landau
