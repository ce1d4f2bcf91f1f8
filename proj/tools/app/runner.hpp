#pragma once

#include "app/config.hpp"

#include "landau/field.hpp"
#include "landau/nonlinear.hpp"
#include "landau/profiles.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace landau::app {

const std::vector<std::string>& subcommands();

// Config -> library objects. Defaults apply to absent keys.
PhaseGrid grid_from(const Config& c, const PhaseGrid& def);
VelocityProfile profile_from(const Config& c, double default_T = 0.15915494309189535);
Interaction interaction_from(const Config& c, const std::string& def = "electrostatic");
std::vector<Perturbation> perturbations_from(const Config& c);
SimConfig sim_from(const Config& c, const SimConfig& def);

struct RunReport {
    std::string subcommand;
    std::string config_hash;
    std::vector<std::string> artifacts; // file names inside the output directory
    double wall_time = 0.0;
};

// Runs one subcommand and writes its artifacts plus manifest.json into `out`.
// Throws ConfigError / DomainError / NumericalError.
RunReport run_subcommand(const std::string& name, const Config& cfg, const std::filesystem::path& out,
                         unsigned threads);

} // namespace landau::app
