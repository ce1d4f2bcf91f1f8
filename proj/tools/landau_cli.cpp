#include "app/config.hpp"
#include "app/runner.hpp"

#include "landau/error.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

// One JSON object per failure on stderr.
int fail(int code, const std::string& kind, const std::string& sub, const std::string& msg) {
    nlohmann::json j{{"error", kind}, {"subcommand", sub}, {"message", msg}, {"exit_code", code}};
    std::cerr << j.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    using namespace landau;
    CLI::App app{"Landau damping laboratory: linear theory, nonlinear runs, norms, kernels, Newton stages, expansions"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", LANDAU_VERSION);

    struct Opts {
        std::string config, out;
        std::vector<std::string> sets;
        unsigned threads = 1;
        std::string profile, interaction;
    } o;

    for (const auto& name : app::subcommands()) {
        auto* sc = app.add_subcommand(name);
        sc->add_option("-c,--config", o.config, "INI experiment config");
        sc->add_option("-o,--out", o.out, "output directory (default: [output] dir, $LANDAU_OUT_DIR, or ./out/<subcommand>)");
        sc->add_option("-s,--set", o.sets, "override, section.key=value (repeatable)");
        sc->add_option("--threads", o.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
        sc->add_option("--profile", o.profile, "shorthand for profile.name");
        sc->add_option("--interaction", o.interaction, "shorthand for interaction.name");
    }

    if (argc > 1 && argv[1][0] != '-') {
        const auto& subs = app::subcommands();
        if (std::find(subs.begin(), subs.end(), std::string(argv[1])) == subs.end())
            return fail(2, "usage", argv[1], std::string("unknown subcommand '") + argv[1] + "'");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", "", e.what());
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        app::Config cfg;
        if (!o.config.empty()) {
            if (!std::filesystem::exists(o.config)) return fail(2, "config", sub, "config file not found: " + o.config);
            cfg = app::Config::load(o.config);
        }
        if (!o.profile.empty()) cfg.set("profile.name", o.profile);
        if (!o.interaction.empty()) cfg.set("interaction.name", o.interaction);
        for (const auto& s : o.sets) cfg.set(s);

        std::filesystem::path out = "out/" + sub;
        if (const char* env = std::getenv("LANDAU_OUT_DIR")) out = std::filesystem::path(env) / sub;
        if (cfg.has("output.dir")) out = cfg.str("output.dir", "");
        if (!o.out.empty()) out = o.out;

        const auto rep = app::run_subcommand(sub, cfg, out, o.threads);
        nlohmann::json j{{"subcommand", sub},
                         {"config_hash", rep.config_hash},
                         {"out", out.string()},
                         {"artifacts", rep.artifacts},
                         {"wall_time_s", rep.wall_time}};
        std::cout << j.dump() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        return fail(2, "config", sub, e.what());
    } catch (const DomainError& e) {
        return fail(1, "domain", sub, e.what());
    } catch (const NumericalError& e) {
        return fail(1, "numerical", sub, e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", sub, e.what());
    }
}
