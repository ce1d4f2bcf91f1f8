#include "app/config.hpp"

#include "landau/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace landau::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (r.ec != std::errc() || r.ptr != end) throw ConfigError("config key " + key + ": '" + v + "' is not a number");
    return x;
}

} // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "output.dir",
        "run.seed",
        "grid.L", "grid.nx", "grid.vmax", "grid.nv",
        "profile.name", "profile.rho0", "profile.T", "profile.a", "profile.w_plus", "profile.w_minus",
        "interaction.name", "interaction.G", "interaction.e2", "interaction.sigma", "interaction.gamma",
        "interaction.cw", "interaction.scale", "interaction.table",
        "perturbation.modes", "perturbation.shape", "perturbation.T", "perturbation.center", "perturbation.phase",
        "time.dt", "time.T", "time.cadence", "time.k_record", "time.snapshots", "time.dealias",
        "kick.mode", "kick.amplitude", "kick.time",
        "linear.k_max", "linear.lambda", "linear.kappa_tol", "linear.n_omega", "linear.n_gamma", "linear.k_scan",
        "linear.fit_begin", "linear.fit_end", "linear.root_re_max",
        "penrose.h", "penrose.k_max",
        "echo.k", "echo.t_min", "echo.noise_floor",
        "norms.field", "norms.specs", "norms.k_band", "norms.q_band",
        "kernels.quantity", "kernels.family", "kernels.alpha", "kernels.gamma", "kernels.eps", "kernels.t",
        "kernels.k_max", "kernels.mode_k_max",
        "newton.stages", "newton.lambda1", "newton.mu1", "newton.divergence_factor", "newton.k_volterra",
        "expand.eps", "expand.alpha_c", "expand.w1", "expand.w2", "expand.odd", "expand.modes", "expand.eta_min",
        "expand.eta_max", "expand.eta_step", "expand.simulate", "expand.heteroclinic",
    };
    return keys;
}

double parse_number(const std::string& context, const std::string& text) { return to_double(context, trim(text)); }

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found or unreadable: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

Config Config::parse(const std::string& text, const std::string& origin) {
    boost::property_tree::ptree pt;
    std::istringstream in(text);
    try {
        boost::property_tree::read_ini(in, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(origin + ": " + e.message() + " at line " + std::to_string(e.line()));
    }
    Config c;
    for (const auto& [section, body] : pt) {
        if (body.empty()) throw ConfigError(origin + ": key '" + section + "' outside a [section]");
        for (const auto& [key, value] : body) c.set(section + "." + key, value.data());
    }
    return c;
}

void Config::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
    const auto& k = known_keys();
    if (std::find(k.begin(), k.end(), key) == k.end()) throw ConfigError("unknown config key: " + key);
    kv_[key] = trim(value);
}

std::string Config::str(const std::string& key, const std::string& def) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double Config::num(const std::string& key, double def) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : to_double(key, it->second);
}

long Config::integer(const std::string& key, long def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    long x = 0;
    const auto& v = it->second;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw ConfigError("config key " + key + ": '" + v + "' is not an integer");
    return x;
}

bool Config::flag(const std::string& key, bool def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    const auto& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key " + key + ": '" + v + "' is not a boolean");
}

std::vector<double> Config::list(const std::string& key, std::vector<double> def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<double> out;
    for (const auto& s : split(it->second, ", \t")) out.push_back(to_double(key, s));
    return out;
}

std::vector<std::vector<std::string>> Config::records(const std::string& key) const {
    std::vector<std::vector<std::string>> out;
    const auto it = kv_.find(key);
    if (it == kv_.end()) return out;
    for (const auto& item : split(it->second, ",;")) {
        std::vector<std::string> fields;
        std::string cur;
        for (char c : item) {
            if (c == ':') {
                fields.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(trim(cur));
        out.push_back(std::move(fields));
    }
    return out;
}

std::string Config::ini(bool with_output) const {
    std::ostringstream os;
    std::string section;
    for (const auto& [key, value] : kv_) {
        if (!with_output && key.rfind("output.", 0) == 0) continue;
        const auto dot = key.find('.');
        const std::string s = key.substr(0, dot);
        if (s != section) {
            if (!section.empty()) os << '\n';
            os << '[' << s << "]\n";
            section = s;
        }
        os << key.substr(dot + 1) << " = " << value << '\n';
    }
    return os.str();
}

std::string Config::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(ini(false))));
    return buf;
}

} // namespace landau::app
