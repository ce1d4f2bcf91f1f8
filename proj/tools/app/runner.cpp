#include "app/runner.hpp"

#include "landau/csv.hpp"
#include "landau/error.hpp"
#include "landau/expansions.hpp"
#include "landau/field_io.hpp"
#include "landau/kernels.hpp"
#include "landau/linear.hpp"
#include "landau/newton.hpp"
#include "landau/norms.hpp"
#include "landau/parallel.hpp"

#include <boost/version.hpp>

#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#ifndef LANDAU_VERSION
#define LANDAU_VERSION "0.0.0"
#endif

namespace landau::app {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double pi = std::numbers::pi;
const double nan = std::numeric_limits<double>::quiet_NaN();

// ---- artifact sink -------------------------------------------------------------------------

class Sink {
public:
    Sink(fs::path dir, std::string cmd, std::string hash) : dir_(std::move(dir)), cmd_(std::move(cmd)), hash_(std::move(hash)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw ConfigError("output directory not writable: " + dir_.string());
    }

    struct Csv {
        std::ofstream os;
        CsvWriter w;
        Csv(const fs::path& p, std::vector<std::string> header, const std::string& pre)
            : os(open(p)), w(os, std::move(header), pre) {}
        static std::ofstream open(const fs::path& p) {
            std::ofstream f(p, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + p.string());
            return f;
        }
    };

    std::unique_ptr<Csv> csv(const std::string& name, std::vector<std::string> header) {
        files_.push_back(name);
        return std::make_unique<Csv>(dir_ / name, std::move(header),
                                     "config_hash=" + hash_ + " schema=landau." + cmd_ + "." + stem(name) + ".v1");
    }

    void write_json(const std::string& name, json j) {
        files_.push_back(name);
        j["config_hash"] = hash_;
        auto os = Csv::open(dir_ / name);
        os << j.dump(2) << '\n';
    }

    void field(const std::string& name, const DistributionField& f) {
        files_.push_back(name);
        write_field(dir_ / name, f);
    }

    const std::vector<std::string>& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

private:
    static std::string stem(const std::string& n) { return fs::path(n).stem().string(); }
    fs::path dir_;
    std::string cmd_, hash_;
    std::vector<std::string> files_;
};

// NaN/inf as JSON null
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

// ---- shared pieces ---------------------------------------------------------------------------

DistributionField background_field(const SimConfig& s) {
    SimConfig b = s;
    b.perturbations.clear();
    b.kick.reset();
    return initial_field(b);
}

void rho_rows(Sink::Csv& out, double t, const std::vector<cplx>& rho, long k0) {
    for (std::size_t k = 0; k < rho.size(); ++k)
        out.w.row({t, static_cast<double>(static_cast<long>(k) + k0), rho[k].real(), rho[k].imag(), std::abs(rho[k])});
}

std::vector<std::string> series_header(long k_record) {
    std::vector<std::string> h{"t"};
    for (long k = 0; k <= k_record; ++k) {
        h.push_back("rho" + std::to_string(k) + "_re");
        h.push_back("rho" + std::to_string(k) + "_im");
    }
    for (const char* s : {"force_sup", "force_l2", "force_h1", "mass", "momentum", "kinetic", "potential", "energy",
                          "entropy", "boundary_mass"})
        h.push_back(s);
    return h;
}

void write_series(Sink& sink, const SimOutput& out, long k_record) {
    auto csv = sink.csv("series.csv", series_header(k_record));
    for (std::size_t j = 0; j < out.times.size(); ++j) {
        std::vector<double> r{out.times[j]};
        for (const auto& z : out.rho[j]) {
            r.push_back(z.real());
            r.push_back(z.imag());
        }
        const auto& c = out.conserved[j];
        for (double x : {out.force_sup[j], out.force_l2[j], out.force_h1[j], c.mass, c.momentum, c.kinetic, c.potential,
                         c.energy, c.entropy, out.boundary_mass[j]})
            r.push_back(x);
        csv->w.row(r);
    }
    for (std::size_t i = 0; i < out.snapshots.size(); ++i) sink.field("snapshot_" + std::to_string(i) + ".lfld", out.snapshots[i].second);
    sink.field("final.lfld", out.final_state);
}

json run_summary(const SimOutput& out) {
    json j;
    const auto& c0 = out.conserved.front();
    const auto& c1 = out.conserved.back();
    const double T = out.times.back() - out.times.front();
    j["steps_recorded"] = out.times.size();
    j["mass_drift"] = num(std::abs(c1.mass - c0.mass));
    j["energy_drift_per_time"] = num(T > 0.0 ? std::abs(c1.energy - c0.energy) / T : 0.0);
    j["force_sup_initial"] = num(out.force_sup.front());
    j["force_sup_final"] = num(out.force_sup.back());
    j["boundary_mass_max"] = num(*std::max_element(out.boundary_mass.begin(), out.boundary_mass.end()));
    return j;
}

json criterion_json(const CriterionResult& c) {
    return json{{"status", std::string(to_string(c.status))}, {"value", num(c.value)}, {"detail", c.detail}};
}

json root_json(const DispersionRoot& r) {
    json j{{"k", r.k}, {"found", r.found()}, {"diagnostic", r.diagnostic}};
    if (r.found()) {
        j["xi"] = cnum(*r.xi);
        j["growth_rate"] = num(r.growth_rate);
        j["frequency"] = num(r.frequency);
        j["residual"] = num(r.residual);
    }
    return j;
}

// Random spectral field on |k| <= kb, |q| <= qb with Gaussian envelope in q, Hermitian so the
// nodal field is real. Uses raw 64-bit draws: identical on every platform for a given seed.
DistributionField random_field(const PhaseGrid& g, std::uint64_t seed, long kb, long qb) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    DistributionField f(g, Representation::Spectral);
    for (long k = 0; k <= kb; ++k)
        for (long q = -qb; q <= qb; ++q) {
            if (k == 0 && q < 0) continue;
            const double env = std::exp(-3.0 * static_cast<double>(q * q) / static_cast<double>(qb * qb));
            const cplx z = env * cplx(u(), u());
            f.at(g.x.index(k), g.v.index(q)) = (k == 0 && q == 0) ? cplx(z.real()) : z;
            if (k != 0 || q != 0) f.at(g.x.index(-k), g.v.index(-q)) = std::conj(f.at(g.x.index(k), g.v.index(q)));
        }
    return f;
}

const PhaseGrid default_grid{{1.0, 16}, {6.0, 256}};

// ---- subcommands -----------------------------------------------------------------------------

void cmd_free_transport(const Config& c, Sink& sink) {
    SimConfig def;
    def.grid = default_grid;
    def.f0 = VelocityProfile::maxwellian(1.0, 1.0 / (2.0 * pi));
    def.perturbations = {{1, 0.1}};
    def.dt = 0.05;
    def.horizon = 2.0;
    def.k_record = 2;
    const SimConfig s = sim_from(c, def);
    const DistributionField fi = initial_field(s);
    const long n = std::lround(s.horizon / s.dt);
    auto csv = sink.csv("rho.csv", {"t", "k", "Re", "Im", "abs"});
    DistributionField f = fi;
    for (long j = 0; j <= n; ++j) {
        if (j % static_cast<long>(s.cadence) != 0 && j != n) continue;
        const double t = static_cast<double>(j) * s.dt;
        f = free_transport(fi, t);
        const auto rho = density(f);
        std::vector<cplx> r;
        for (long k = 0; k <= s.k_record; ++k) r.push_back(rho.at(k));
        rho_rows(*csv, t, r, 0);
    }
    sink.field("final.lfld", f);
    sink.write_json("report.json", json{{"steps", n}, {"dt", s.dt}, {"T", s.horizon}});
}

void cmd_linear(const Config& c, Sink& sink) {
    SimConfig def;
    def.grid = default_grid;
    def.f0 = VelocityProfile::maxwellian(1.0, 0.25 / pi);
    def.perturbations = {{1, 0.01}};
    def.dt = 0.01;
    def.horizon = 20.0;
    const SimConfig s = sim_from(c, def);
    const LinearSetup setup{s.f0, s.w, s.grid.x.L};

    ScanOptions opt;
    // the strip must stay left of the damped roots for a stable background to pass
    opt.lambda = c.num("linear.lambda", 0.05);
    opt.kappa_tol = c.num("linear.kappa_tol", opt.kappa_tol);
    opt.n_omega = static_cast<int>(c.integer("linear.n_omega", 801));
    opt.n_gamma = static_cast<int>(c.integer("linear.n_gamma", 60));
    opt.k_max = c.integer("linear.k_scan", opt.k_max);
    const auto rep = check_condition_L(setup, opt);

    const long kmax = c.integer("linear.k_max", 2);
    if (kmax < 1) throw ConfigError("linear.k_max must be >= 1");
    const DistributionField hi = initial_field(s) - background_field(s);
    const auto sol = solve_volterra(setup, source_from_field(hi), s.dt, s.horizon, kmax);
    auto csv = sink.csv("rho.csv", {"t", "k", "Re", "Im", "abs"});
    for (std::size_t j = 0; j <= sol.steps(); ++j) {
        if (j % s.cadence != 0 && j != sol.steps()) continue;
        for (long k = 1; k <= kmax; ++k) {
            const cplx z = sol.mode(k)[j];
            csv->w.row({sol.time(j), static_cast<double>(k), z.real(), z.imag(), std::abs(z)});
        }
    }

    json j;
    j["verdict"] = std::string(to_string(rep.verdict));
    j["kappa_min"] = num(rep.kappa_min);
    j["lambda_scan"] = num(rep.lambda_scan);
    j["worst_point"] = json{{"xi", cnum(rep.worst_xi)}, {"k", rep.worst_k}};
    j["omega_max"] = num(rep.omega_max);
    j["coarse_scan"] = rep.coarse;
    j["criteria"] = json{{"a_smallness", criterion_json(rep.smallness)},
                         {"b_monotone", criterion_json(rep.monotone)},
                         {"c_penrose", criterion_json(rep.penrose)}};
    if (rep.growing) j["growing_root"] = root_json(*rep.growing);
    const double re_max = c.num("linear.root_re_max", 0.3);
    j["dispersion_root"] = root_json(dispersion_root(setup, 1, default_root_box(setup, 1, re_max)));
    try {
        const auto t = sol.times();
        const auto fit = fit_decay_rate(t, sol.mode(1), c.num("linear.fit_begin", 0.0), c.num("linear.fit_end", s.horizon));
        j["fit"] = json{{"rate", num(fit.rate)},
                        {"frequency", num(fit.frequency)},
                        {"residual", num(fit.residual)},
                        {"maxima", fit.maxima},
                        {"exponential", fit.exponential}};
    } catch (const DomainError& e) {
        j["fit"] = json{{"error", e.what()}};
    }
    j["profile"] = s.f0.name();
    j["interaction"] = s.w.name();
    j["L"] = s.grid.x.L;
    sink.write_json("report.json", j);
}

void cmd_penrose(const Config& c, Sink& sink) {
    const VelocityProfile f0 = profile_from(c);
    const Interaction w = interaction_from(c);
    const double L = c.num("grid.L", 1.0);
    const LinearSetup setup{f0, w, L};
    const double h = c.num("penrose.h", 1e-3);
    const long kmax = c.integer("penrose.k_max", 4);

    auto csv = sink.csv("critical_points.csv", {"direction", "w", "pv", "k", "W_pv"});
    json pts = json::array();
    for (int dir : {1, -1}) {
        const Marginal m = marginal(f0, dir);
        const auto cp = critical_points(m);
        for (double wv : cp.points) {
            const double pv = principal_value(m, wv, h);
            for (long k = 1; k <= kmax; ++k) {
                const double wk = w.w_hat_L(dir * k, L);
                csv->w.row({static_cast<double>(dir), wv, pv, static_cast<double>(k), wk * pv});
            }
            pts.push_back(json{{"direction", dir}, {"w", wv}, {"pv", num(pv)}});
        }
        if (cp.inconclusive) pts.push_back(json{{"direction", dir}, {"inconclusive", true}});
    }
    json j{{"a_smallness", criterion_json(criterion_smallness(setup))},
           {"b_monotone", criterion_json(criterion_monotone(setup))},
           {"c_penrose", criterion_json(criterion_penrose(setup))},
           {"critical_points", pts},
           {"profile", f0.name()},
           {"interaction", w.name()},
           {"L", L}};
    if (f0.is_gaussian_mixture() && f0.components().size() == 1) {
        const double T = f0.components().front().T, rho0 = f0.mass();
        if (w.coupling() == Coupling::Attractive) j["jeans_length"] = jeans_length(-w.w_hat(1.0) * pi, T, rho0);
        if (w.coupling() == Coupling::Repulsive) j["debye_length"] = debye_length(w.w_hat(1.0) * pi, T, rho0);
    }
    sink.write_json("report.json", j);
}

SimConfig nonlinear_defaults() {
    SimConfig def;
    def.grid = {{1.0, 16}, {4.0, 512}};
    def.f0 = VelocityProfile::maxwellian(1.0, 0.25 / pi);
    def.perturbations = {{1, 0.01}};
    def.dt = 0.05;
    def.horizon = 10.0;
    def.k_record = 2;
    return def;
}

void cmd_nonlinear(const Config& c, Sink& sink) {
    const SimConfig s = sim_from(c, nonlinear_defaults());
    const SimOutput out = run_simulation(s);
    write_series(sink, out, s.k_record);
    sink.write_json("report.json", run_summary(out));
}

void cmd_echo(const Config& c, Sink& sink) {
    SimConfig def = nonlinear_defaults();
    def.grid = {{1.0, 16}, {2.5, 512}};
    def.perturbations = {{1, 0.02}};
    def.kick = EchoKick{2, 0.1, 4.0};
    SimConfig s = sim_from(c, def);
    if (!s.kick) s.kick = def.kick;
    const long m0 = s.perturbations.empty() ? 1 : s.perturbations.front().mode;
    const long k = c.integer("echo.k", s.kick->mode - m0);
    const double t_min = c.num("echo.t_min", s.kick->time);
    const auto res = echo_experiment(s, k, t_min, c.num("echo.noise_floor", 1e-12));
    write_series(sink, res.output, s.k_record);
    auto csv = sink.csv("peaks.csv", {"time", "height"});
    for (const auto& p : res.peaks) csv->w.row({p.time, p.height});
    json j = run_summary(res.output);
    j["k"] = k;
    j["detected"] = res.detected;
    try {
        j["predicted_time"] = predict_echo_time(k, k - s.kick->mode, s.kick->time);
    } catch (const DomainError& e) {
        j["predicted_time"] = nullptr;
        j["prediction_error"] = e.what();
    }
    if (res.detected) j["peak"] = json{{"time", res.peaks.front().time}, {"height", res.peaks.front().height}};
    sink.write_json("report.json", j);
}

void cmd_norms(const Config& c, Sink& sink) {
    const std::string src = c.str("norms.field", "random");
    DistributionField f;
    if (src == "random") {
        const PhaseGrid g = grid_from(c, default_grid);
        f = random_field(g, static_cast<std::uint64_t>(c.integer("run.seed", 1)), c.integer("norms.k_band", 2),
                         c.integer("norms.q_band", 24));
    } else {
        if (!fs::exists(src)) throw ConfigError("norms.field: file not found: " + src);
        f = read_field(src);
    }
    auto specs = c.records("norms.specs");
    if (specs.empty()) specs = {{"F", "0.1", "0.05", "0", "1"}, {"Y", "0.1", "0.05", "0", "inf"}, {"Z", "0.1", "0.05", "0", "1"}};
    auto csv = sink.csv("norms.csv", {"family", "lambda", "mu", "tau", "p", "value", "overflow", "n_used", "tail"});
    for (const auto& r : specs) {
        if (r.size() < 5 || r.size() > 6)
            throw ConfigError("norms.specs entries are family:lambda:mu:tau:p[:n_max]");
        NormSpec sp;
        sp.family = norm_family_from_string(r[0]);
        auto d = [](const std::string& v) { return parse_number("norms.specs", v); };
        sp.lambda = d(r[1]);
        sp.mu = d(r[2]);
        sp.tau = d(r[3]);
        sp.p = lp_from_string(r[4]);
        if (r.size() == 6) sp.n_max = static_cast<int>(d(r[5]));
        sp.validate();
        const auto v = evaluate_norm(sp, f);
        csv->w.row_text({std::string(to_string(sp.family)), format_double(sp.lambda), format_double(sp.mu),
                         format_double(sp.tau), std::string(to_string(sp.p)), format_double(v.value),
                         v.overflow ? "1" : "0", std::to_string(v.n_used), format_double(v.tail)});
    }
    if (src == "random") sink.field("field.lfld", f);
}

void cmd_kernels(const Config& c, Sink& sink) {
    const std::string q = c.str("kernels.quantity", "exp");
    if (q != "exp" && q != "l2" && q != "mode")
        throw ConfigError("kernels.quantity must be exp, l2 or mode");
    KernelSpec ks;
    ks.family = kernel_family_from_string(c.str("kernels.family", "Kgamma"));
    ks.k_max = static_cast<int>(c.integer("kernels.k_max", 0));
    const auto alphas = c.list("kernels.alpha", {0.5});
    const auto gammas = c.list("kernels.gamma", {1.0, 2.0});
    const auto epss = c.list("kernels.eps", {0.3});
    const auto ts = c.list("kernels.t", {25.0, 50.0, 100.0});
    const long mk = c.integer("kernels.mode_k_max", 64);
    if (q != "mode" && ks.family == KernelFamily::Kmode) throw ConfigError("Kmode moments use kernels.quantity = mode");

    struct Row {
        double a, g, e, t;
    };
    std::vector<Row> rows;
    for (double a : alphas)
        for (double g : gammas)
            for (double e : epss)
                for (double t : ts) rows.push_back({a, g, e, t});
    std::vector<std::array<double, 4>> res(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const auto& r = rows[i];
        KernelSpec sp = ks;
        sp.alpha = r.a;
        sp.gamma = r.g;
        double v = 0.0, b = 0.0, ok = 1.0;
        if (q == "mode") {
            const auto m = mode_moments(r.a, r.g, r.e, r.t, mk);
            v = m.m1;
            ok = m.resolved ? 1.0 : 0.0;
            b = mode_moment_bound(1, r.a, r.g, r.e, r.t);
        } else {
            sp.validate();
            const auto m = q == "exp" ? exp_moment(sp, r.e, r.t) : l2_exp_moment(sp, r.e, r.t);
            v = m.value;
            ok = m.resolved ? 1.0 : 0.0;
            b = q == "exp" ? exp_moment_bound(r.a, r.g, r.e, r.t) : l2_exp_moment_bound(r.a, r.g, r.e, r.t);
        }
        res[i] = {v, b, b > 0.0 ? v / b : nan, ok};
    });
    auto csv = sink.csv("moments.csv", {"alpha", "gamma", "eps", "t", "value", "bound", "ratio", "resolved"});
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv->w.row({rows[i].a, rows[i].g, rows[i].e, rows[i].t, res[i][0], res[i][1], res[i][2], res[i][3]});
    sink.write_json("report.json", json{{"quantity", q}, {"family", std::string(to_string(ks.family))}, {"k_max", ks.k_max}});
}

void cmd_newton(const Config& c, Sink& sink) {
    SimConfig def;
    def.grid = {{1.0, 16}, {2.5, 128}};
    def.f0 = VelocityProfile::maxwellian(1.0, 0.25 / pi);
    def.perturbations = {{1, 0.01}};
    def.dt = 0.025;
    def.horizon = 10.0;
    def.k_record = 2;
    NewtonConfig nc;
    nc.sim = sim_from(c, def);
    nc.lambda1 = c.num("newton.lambda1", 0.01);
    nc.mu1 = c.num("newton.mu1", 0.0);
    nc.divergence_factor = c.num("newton.divergence_factor", nc.divergence_factor);
    nc.k_volterra = c.integer("newton.k_volterra", 0);
    const auto st = run_newton(nc, static_cast<int>(c.integer("newton.stages", 3)));
    auto csv = sink.csv("stages.csv", {"stage", "t", "k", "Re", "Im", "abs"});
    for (const auto& s : st.stages)
        for (std::size_t j = 0; j < st.times.size(); ++j)
            for (std::size_t k = 0; k < s.rho[j].size(); ++k) {
                const cplx z = s.rho[j][k];
                csv->w.row({static_cast<double>(s.index), st.times[j], static_cast<double>(k), z.real(), z.imag(), std::abs(z)});
            }
    const auto d = track_deltas(st);
    json stages = json::array();
    for (const auto& s : st.stages)
        stages.push_back(json{{"stage", s.index}, {"delta", num(s.delta)}, {"delta_time", s.delta_time}, {"max_mean", num(s.max_mean)},
                              {"lambda", nc.lambda(s.index)}, {"mu", nc.mu(s.index)}});
    json ratios = json::array();
    for (double r : d.ratio) ratios.push_back(num(r));
    sink.write_json("deltas.json", json{{"stages", stages}, {"ratio", ratios}, {"decreasing", d.decreasing},
                                        {"quadratic", d.quadratic}, {"detail", d.detail}});
    sink.field("cumulative_final.lfld", st.cumulative_final());
}

void cmd_expand(const Config& c, Sink& sink) {
    ExpansionRun run;
    run.grid = grid_from(c, run.grid);
    run.dt = c.num("time.dt", run.dt);
    run.T = c.num("time.T", run.T);
    run.eps = c.num("expand.eps", run.eps);
    run.alpha_c = c.num("expand.alpha_c", run.alpha_c);
    run.w1 = c.num("expand.w1", run.w1);
    run.w2 = c.num("expand.w2", run.w2);
    run.odd = c.flag("expand.odd", run.odd);
    const auto mr = c.records("expand.modes");
    if (!mr.empty()) {
        run.modes.clear();
        auto d = [](const std::string& v) { return parse_number("expand.modes", v); };
        for (const auto& r : mr) {
            if (r.empty() || r.size() > 3) throw ConfigError("expand.modes entries are k[:T[:center]]");
            ExpansionRun::Mode m;
            m.k = std::lround(d(r[0]));
            if (r.size() > 1) m.T = d(r[1]);
            if (r.size() > 2) m.center = d(r[2]);
            run.modes.push_back(m);
        }
    }
    run.validate();
    const double e0 = c.num("expand.eta_min", -3.0), e1 = c.num("expand.eta_max", 3.0), de = c.num("expand.eta_step", 0.25);
    if (!(de > 0.0) || !(e1 >= e0)) throw ConfigError("expand: need eta_step > 0 and eta_max >= eta_min");
    std::vector<double> eta;
    for (long i = 0; e0 + static_cast<double>(i) * de <= e1 + 1e-12; ++i) eta.push_back(e0 + static_cast<double>(i) * de);

    const ExpansionConfig ec = run.expansion();
    const std::vector<cplx> none(eta.size(), cplx(nan, nan));
    const auto g = ec.phi ? second_order_limit(ec, eta) : none;
    const auto C = third_order_C(ec, eta);
    const auto mean = c.flag("expand.simulate", true) ? mean_shift(run, eta) : none;
    json j{{"eps", run.eps}, {"alpha_c", run.alpha_c}, {"w1", run.w1}, {"w2", run.w2}, {"odd", run.odd}};
    std::vector<cplx> delta = none, pred = none;
    if (c.flag("expand.heteroclinic", false)) {
        const auto rep = heteroclinic_test(run, eta);
        delta = rep.delta;
        pred = rep.predicted;
        j["heteroclinic"] = json{{"delta_max", num(rep.delta_max)},     {"noise_floor", num(rep.noise_floor)},
                                 {"above_noise", rep.above_noise},      {"eta_star", rep.eta_star},
                                 {"sign_agrees", rep.sign_agrees},      {"scaling_ratio", num(rep.scaling_ratio)},
                                 {"inconclusive", rep.inconclusive},    {"detail", rep.detail}};
    }
    auto csv = sink.csv("expand.csv", {"eta", "g_re", "g_im", "C_re", "C_im", "mean_re", "mean_im", "delta_re", "delta_im",
                                       "pred_re", "pred_im"});
    for (std::size_t i = 0; i < eta.size(); ++i)
        csv->w.row({eta[i], g[i].real(), g[i].imag(), C[i].real(), C[i].imag(), mean[i].real(), mean[i].imag(),
                    delta[i].real(), delta[i].imag(), pred[i].real(), pred[i].imag()});
    sink.write_json("report.json", j);
}

const std::map<std::string, std::function<void(const Config&, Sink&)>>& table() {
    static const std::map<std::string, std::function<void(const Config&, Sink&)>> t{
        {"free-transport", cmd_free_transport}, {"linear", cmd_linear}, {"penrose", cmd_penrose},
        {"nonlinear", cmd_nonlinear},           {"echo", cmd_echo},     {"norms", cmd_norms},
        {"kernels", cmd_kernels},               {"newton", cmd_newton}, {"expand", cmd_expand},
    };
    return t;
}

} // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"free-transport", "linear", "penrose", "nonlinear", "echo",
                                            "norms",          "kernels", "newton", "expand"};
    return s;
}

PhaseGrid grid_from(const Config& c, const PhaseGrid& def) {
    PhaseGrid g = def;
    g.x.L = c.num("grid.L", g.x.L);
    const long nx = c.integer("grid.nx", static_cast<long>(g.x.nx));
    const long nv = c.integer("grid.nv", static_cast<long>(g.v.nv));
    if (nx <= 0 || nv <= 0) throw ConfigError("grid.nx and grid.nv must be positive");
    g.x.nx = static_cast<std::size_t>(nx);
    g.v.nv = static_cast<std::size_t>(nv);
    g.v.vmax = c.num("grid.vmax", g.v.vmax);
    g.validate();
    return g;
}

VelocityProfile profile_from(const Config& c, double default_T) {
    const std::string name = c.str("profile.name", "maxwellian");
    const double rho0 = c.num("profile.rho0", 1.0);
    const double T = c.num("profile.T", default_T);
    if (name == "maxwellian") return VelocityProfile::maxwellian(rho0, T);
    if (name == "cauchy") return VelocityProfile::cauchy();
    if (name == "two_bump")
        return VelocityProfile::two_bump(c.num("profile.a", 1.0), c.num("profile.w_plus", 0.5 * rho0),
                                         c.num("profile.w_minus", 0.5 * rho0), T);
    throw ConfigError("unknown profile '" + name + "' (maxwellian, cauchy, two_bump)");
}

Interaction interaction_from(const Config& c, const std::string& def) {
    const std::string name = c.str("interaction.name", def);
    Interaction w = Interaction::none();
    if (name == "gravitational") w = Interaction::gravitational(c.num("interaction.G", 1.0));
    else if (name == "electrostatic") w = Interaction::electrostatic(c.num("interaction.e2", 1.0));
    else if (name == "screened") w = Interaction::screened_analytic(c.num("interaction.sigma", 1.0));
    else if (name == "power_law") w = Interaction::power_law(c.num("interaction.gamma", 1.0), c.num("interaction.cw", 1.0));
    else if (name == "table") {
        std::map<long, double> t;
        for (const auto& r : c.records("interaction.table")) {
            if (r.size() != 2) throw ConfigError("interaction.table entries are k:value");
            t[std::lround(parse_number("interaction.table", r[0]))] = parse_number("interaction.table", r[1]);
        }
        w = Interaction::table(t);
    } else if (name != "none")
        throw ConfigError("unknown interaction '" + name + "' (gravitational, electrostatic, screened, power_law, table, none)");
    if (c.has("interaction.scale")) w = w.scaled(c.num("interaction.scale", 1.0));
    return w;
}

std::vector<Perturbation> perturbations_from(const Config& c) {
    std::vector<Perturbation> out;
    const std::string shape = c.str("perturbation.shape", "background");
    if (shape != "background" && shape != "maxwellian")
        throw ConfigError("perturbation.shape must be background or maxwellian");
    auto d = [](const std::string& v) { return parse_number("perturbation.modes", v); };
    for (const auto& r : c.records("perturbation.modes")) {
        if (r.size() < 2 || r.size() > 3) throw ConfigError("perturbation.modes entries are k:amplitude[:phase]");
        Perturbation p;
        p.mode = std::lround(d(r[0]));
        p.amplitude = d(r[1]);
        p.phase = r.size() == 3 ? d(r[2]) : c.num("perturbation.phase", 0.0);
        if (shape == "maxwellian") {
            p.shape = Perturbation::Shape::Maxwellian;
            p.T = c.num("perturbation.T", 1.0 / (2.0 * pi));
            p.center = c.num("perturbation.center", 0.0);
        }
        out.push_back(p);
    }
    return out;
}

SimConfig sim_from(const Config& c, const SimConfig& def) {
    SimConfig s = def;
    s.grid = grid_from(c, def.grid);
    if (c.has("profile.name") || c.has("profile.T") || c.has("profile.rho0"))
        s.f0 = profile_from(c, def.f0.is_gaussian_mixture() ? def.f0.components().front().T : 1.0 / (2.0 * pi));
    s.w = interaction_from(c);
    if (c.has("perturbation.modes")) s.perturbations = perturbations_from(c);
    s.dt = c.num("time.dt", s.dt);
    s.horizon = c.num("time.T", s.horizon);
    const long cad = c.integer("time.cadence", static_cast<long>(s.cadence));
    if (cad < 1) throw ConfigError("time.cadence must be >= 1");
    s.cadence = static_cast<std::size_t>(cad);
    s.k_record = c.integer("time.k_record", s.k_record);
    s.snapshot_times = c.list("time.snapshots", s.snapshot_times);
    s.dealias = c.flag("time.dealias", s.dealias);
    if (c.has("kick.mode") || c.has("kick.amplitude") || c.has("kick.time")) {
        EchoKick k = def.kick.value_or(EchoKick{});
        k.mode = c.integer("kick.mode", k.mode);
        k.amplitude = c.num("kick.amplitude", k.amplitude);
        k.time = c.num("kick.time", k.time);
        s.kick = k;
    }
    s.validate();
    return s;
}

RunReport run_subcommand(const std::string& name, const Config& cfg, const fs::path& out, unsigned threads) {
    const auto& t = table();
    const auto it = t.find(name);
    if (it == t.end()) throw ConfigError("unknown subcommand '" + name + "'");
    set_thread_count(threads);
    const auto start = std::chrono::steady_clock::now();
    RunReport rep;
    rep.subcommand = name;
    rep.config_hash = cfg.hash();
    Sink sink(out, name, rep.config_hash);
    it->second(cfg, sink);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.artifacts = sink.files();

    json m;
    m["subcommand"] = name;
    m["config"] = cfg.ini(false);
    m["seed"] = cfg.integer("run.seed", 1);
    m["threads"] = threads;
    m["wall_time_s"] = rep.wall_time;
    m["artifacts"] = rep.artifacts;
    m["versions"] = json{{"landau", LANDAU_VERSION},
                         {"compiler", __VERSION__},
                         {"cxx_standard", __cplusplus},
                         {"boost", BOOST_LIB_VERSION},
                         {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    sink.write_json("manifest.json", m);
    rep.artifacts.push_back("manifest.json");
    return rep;
}

} // namespace landau::app
