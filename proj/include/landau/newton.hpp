#pragma once

#include "landau/field.hpp"
#include "landau/nonlinear.hpp"

#include <string>
#include <vector>

namespace landau {

// Newton iteration f^n = f0 + h^1 + ... + h^n for the nonlinear problem posed by `sim`:
//   h^1:      linearized flow around f0 with h^1(0) = f_i - f0 (Volterra route)
//   h^{n+1}:  d_t h + v d_x h + F[f^n] d_v h + F[h] d_v f^n = -F[h^n] d_v h^n,  h(0) = 0
// Stages >= 2 use Strang splitting with the coupling and source terms taken at the
// half-step state, so every stage shares the time grid of run_simulation(sim).
struct NewtonConfig {
    SimConfig sim;
    double lambda1 = 0.0; // delta weight indices: lambda_k = lambda1 (1 - k/20), same for mu
    double mu1 = 0.0;
    long k_volterra = 0;  // modes solved by Volterra for h^1; 0: every mode kept by dealiasing
    double divergence_factor = 1e3;
    std::vector<double> field_times; // h^k snapshots kept at these times (final state always kept)

    static constexpr int max_stages = 4;

    double lambda(int stage) const { return lambda1 * (1.0 - stage / 20.0); }
    double mu(int stage) const { return mu1 * (1.0 - stage / 20.0); }
    void validate() const;
};

struct NewtonStage {
    int index = 1;
    std::vector<std::vector<cplx>> rho;   // rho[h^k](t_j, k'), 0 <= k' <= k_record, at the cadence
    double delta = 0.0;                   // sup_t max_{k' != 0} exp(2 pi (lambda t + mu)|k'|) |rho^(t,k')|
    double delta_time = 0.0;              // time of the sup
    double max_mean = 0.0;                // sup_t |rho^(t,0)| after enforcement
    std::vector<std::pair<double, DistributionField>> snapshots; // mixed
    DistributionField final_field;        // h^k(T), mixed
};

struct NewtonState {
    NewtonConfig cfg;
    std::vector<double> times;            // recording times shared by every stage
    std::vector<NewtonStage> stages;      // stages[k-1] = h^k

    int n() const { return static_cast<int>(stages.size()); }
    // f^n(T) = f0 + sum h^k, mixed
    DistributionField cumulative_final() const;
};

// Runs the first `stages` stages in lockstep (1 <= stages <= max_stages).
NewtonState run_newton(const NewtonConfig& cfg, int stages);
NewtonState newton_stage1(const NewtonConfig& cfg);
// One more stage; earlier stages are recomputed bit for bit.
NewtonState newton_stage(const NewtonState& state);

struct DeltaReport {
    std::vector<double> delta;
    std::vector<double> ratio; // ratio[i] = delta_{i+2} / delta_{i+1}^2
    bool decreasing = true;
    bool quadratic = true;     // observed order log delta_{k+1} / log delta_k >= 1.5 whenever delta_k < 1
    std::string detail;
};
DeltaReport track_deltas(const NewtonState& state);

// ||a - b||_{L2(x,v)} for two fields on the same grid.
double l2_distance(const DistributionField& a, const DistributionField& b);

} // namespace landau
