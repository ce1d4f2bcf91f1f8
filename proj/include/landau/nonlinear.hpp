#pragma once

#include "landau/field.hpp"
#include "landau/fft.hpp"
#include "landau/profiles.hpp"

#include <optional>
#include <span>
#include <vector>

namespace landau {

// eps * cos(2 pi k x / L + phase) * theta(v), theta = f0 or a Maxwellian (T, center).
struct Perturbation {
    enum class Shape { Background, Maxwellian };
    long mode = 1;
    double amplitude = 0.0;
    double phase = 0.0;
    Shape shape = Shape::Background;
    double T = 1.0;
    double center = 0.0;
};

// f <- f (1 + amplitude cos(2 pi mode x / L)) at `time`, rescaled to keep the mass.
struct EchoKick {
    long mode = 2;
    double amplitude = 0.0;
    double time = 0.0;
};

struct SimConfig {
    PhaseGrid grid;
    VelocityProfile f0 = VelocityProfile::maxwellian(1.0, 1.0);
    Interaction w = Interaction::none();
    std::vector<Perturbation> perturbations;
    double dt = 0.01;
    double horizon = 1.0;
    std::size_t cadence = 1; // record every `cadence` steps
    long k_record = 4;       // rho^(t,k) kept for 0 <= k <= k_record
    std::optional<EchoKick> kick;
    std::vector<double> snapshot_times;
    bool dealias = true;
    bool record_force = false; // keep F^(t,k) at the cadence (for scattering transforms)
    double boundary_tol = 1e-8;

    void validate() const;
};

struct Conserved {
    double mass = 0.0;
    double momentum = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    double entropy = 0.0; // -int f log f, f clamped at 1e-300
};

// Quadrature values on the grid; energy = kinetic + (1/2L) sum_k W^(L)(k) |rho^(k)|^2.
Conserved conserved_quantities(const DistributionField& f, const Interaction& w);

struct ForceHistory {
    TorusGrid grid;
    std::vector<double> times;
    std::vector<std::vector<cplx>> modes; // F^(t_j, k), FFT order
};

struct SimOutput {
    std::vector<double> times;
    std::vector<std::vector<cplx>> rho; // rho[j][k], 0 <= k <= k_record
    std::vector<double> force_sup, force_l2, force_h1;
    std::vector<Conserved> conserved;
    std::vector<double> boundary_mass;
    std::vector<std::pair<double, DistributionField>> snapshots;
    ForceHistory force;
    DistributionField final_state;

    std::vector<cplx> mode_series(long k) const;
};

// Strang splitting with exact sub-flows for a fixed grid, interaction and dt:
// drift dt/2 (phase multiply in (k,v)), kick dt (phase multiply in (x,eta)), drift dt/2.
class VlasovStepper {
public:
    VlasovStepper(const PhaseGrid& grid, const Interaction& w, double dt, bool dealias = true);

    double dt() const { return dt_; }
    const PhaseGrid& grid() const { return grid_; }

    // One full step on a mixed field; updates force() and boundary_mass().
    void step(DistributionField& f);
    // Exact free flow over dt/2 (sign of dt) on a mixed field.
    void half_drift(DistributionField& f) const;
    // f(x, v) <- f(x, v - F(x) h) for a nodal force, then 2/3 dealiasing; h defaults to dt.
    void kick(DistributionField& f, std::span<const double> force) { kick(f, force, dt_); }
    void kick(DistributionField& f, std::span<const double> force, double h);
    // Nodal force of a mixed field.
    std::vector<double> force_of(const DistributionField& f, std::vector<cplx>* modes = nullptr) const;
    void dealias(DistributionField& f) const;

    const std::vector<cplx>& force_modes() const { return force_modes_; }
    double boundary_mass() const { return boundary_mass_; }

    // mixed <-> (x nodal, v nodal) in place
    void to_nodal(DistributionField& f) const;
    void to_mixed(DistributionField& f) const;

private:
    PhaseGrid grid_;
    Interaction w_;
    double dt_;
    bool dealias_;
    Fft fx_, fv_;
    std::vector<cplx> drift_; // exp(-2 i pi (k/L) v dt/2) per (k,v)
    std::vector<cplx> force_modes_;
    double boundary_mass_ = 0.0;
};

DistributionField step_strang(const DistributionField& f, double dt, const Interaction& w);

// f_i = f0(v) + sum eps cos(2 pi k x / L + phase) theta(v), mixed. Negative values below
// -1e-12 or a boundary value above 1e-12 are configuration errors.
DistributionField initial_field(const SimConfig& cfg);

SimOutput run_simulation(const SimConfig& cfg);

// Echo time t = tau (k - l) / k for the resonance k (t - tau) + l tau = 0.
double predict_echo_time(long k, long l, double tau);

struct EchoPeak {
    double time;
    double height;
};

struct EchoResult {
    SimOutput output;
    long k = 1;
    std::vector<EchoPeak> peaks; // local maxima after t_min, highest first
    bool detected = false;
};

// Runs cfg (which must carry a kick) and locates maxima of |rho^(t,k)| on t > t_min that
// exceed noise_floor.
EchoResult echo_experiment(const SimConfig& cfg, long k, double t_min, double noise_floor = 1e-12);

struct ScatteringDeviation {
    double t = 0.0, tau = 0.0;
    std::vector<double> x, v;   // samples
    std::vector<double> dx, dv; // Omega_{t,tau} - Id (dx as the nearest periodic image)
    double sup_dx = 0.0, sup_dv = 0.0;
    std::size_t flagged = 0; // samples whose characteristic left |v| <= vmax
};

// Omega_{t,tau} = S_{t,tau} o S0_{tau,t}: free flight from tau to t, then the characteristics
// of the recorded force backward from t to tau (RK4 on the history spacing / substeps,
// force linear in time between records, trigonometric in x).
ScatteringDeviation compute_scattering(const ForceHistory& h, double t, double tau, std::span<const double> xs,
                                       std::span<const double> vs, double vmax, int substeps = 1);

} // namespace landau
