#include "fkg/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fkg {

using json = nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out = "invalid config:";
    for (const auto& p : parts) out += "\n  - " + p;
    return out;
}

class Checker {
public:
    explicit Checker(std::vector<std::string>& out) : out_(out) {}

    void expect_keys(const json& obj, const char* where,
                     const std::set<std::string>& required,
                     const std::set<std::string>& optional) {
        for (const auto& key : required)
            if (!obj.contains(key)) out_.push_back(std::string(where) + ": missing required key '" + key + "'");
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!required.contains(it.key()) && !optional.contains(it.key()))
                out_.push_back(std::string(where) + ": unknown key '" + it.key() + "'");
    }

    bool number(const json& obj, const char* key, double& dst) {
        if (!obj.contains(key)) return false;
        if (!obj.at(key).is_number()) {
            out_.push_back(std::string("'") + key + "' must be a number");
            return false;
        }
        dst = obj.at(key).get<double>();
        return true;
    }

    void fail(std::string message) { out_.push_back(std::move(message)); }

private:
    std::vector<std::string>& out_;
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

SimulationConfig parse_config(const std::string& text) {
    std::vector<std::string> bad;
    Checker check(bad);

    json root = json::value_t::discarded;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        bad.push_back(std::string("not valid JSON: ") + e.what());
    }
    if (!bad.empty() || !root.is_object()) {
        if (bad.empty()) bad.push_back("top level must be a JSON object");
        // still report the full required-key list so an empty config names them all
        for (const char* key : {"alpha", "domain_length", "grid_points", "dt", "horizon",
                                "scheme", "mass", "epsilon", "snapshot_times"})
            bad.push_back(std::string("missing required key '") + key + "'");
        throw ConfigError(std::move(bad));
    }

    check.expect_keys(root, "config",
                      {"alpha", "domain_length", "grid_points", "dt", "horizon", "scheme",
                       "mass", "epsilon", "snapshot_times"},
                      {"fd_weight", "tolerances", "output_dir"});

    SimulationConfig c;
    double value = 0.0;
    if (check.number(root, "alpha", value)) {
        if (!(value > 0.0)) check.fail("'alpha' must be positive");
        c.alpha = value;
    }
    if (check.number(root, "domain_length", value)) {
        if (!(value > 0.0)) check.fail("'domain_length' must be positive");
        c.domain_length = value;
    }
    if (root.contains("grid_points")) {
        if (!root["grid_points"].is_number_integer())
            check.fail("'grid_points' must be an integer");
        else {
            c.grid_points = root["grid_points"].get<int>();
            if (c.grid_points < 4 || c.grid_points % 2 != 0)
                check.fail("'grid_points' must be even and at least 4");
        }
    }
    if (check.number(root, "dt", value)) {
        if (!(value > 0.0)) check.fail("'dt' must be positive");
        c.dt = value;
    }
    if (check.number(root, "horizon", value)) {
        if (!(value > 0.0)) check.fail("'horizon' must be positive");
        c.horizon = value;
    }
    if (root.contains("scheme")) {
        const std::string s = root["scheme"].is_string() ? root["scheme"].get<std::string>() : "";
        if (s == "spectral_strang")
            c.scheme = SchemeId::SpectralStrang;
        else if (s == "implicit_fd")
            c.scheme = SchemeId::ImplicitFd;
        else
            check.fail("'scheme' must be \"spectral_strang\" or \"implicit_fd\"");
    }
    if (check.number(root, "fd_weight", value)) {
        if (!(value >= 0.25 && value <= 1.0))
            check.fail("'fd_weight' must lie in [0.25, 1]");
        c.fd_weight = value;
    }

    if (root.contains("mass")) {
        const json& m = root["mass"];
        if (!m.is_object()) {
            check.fail("'mass' must be an object");
        } else {
            check.expect_keys(m, "mass", {"case"},
                              {"x0", "profile", "center", "width", "amplitude"});
            const std::string kind = m.contains("case") && m["case"].is_string()
                                         ? m["case"].get<std::string>()
                                         : "";
            if (kind == "zero")
                c.mass.kind = MassSpec::Kind::Zero;
            else if (kind == "delta")
                c.mass.kind = MassSpec::Kind::Delta;
            else if (kind == "delta_squared")
                c.mass.kind = MassSpec::Kind::DeltaSquared;
            else if (kind == "bounded")
                c.mass.kind = MassSpec::Kind::Bounded;
            else
                check.fail("'mass.case' must be zero|delta|delta_squared|bounded");
            if (check.number(m, "x0", value)) c.mass.x0 = value;
            if (m.contains("profile")) {
                const std::string p =
                    m["profile"].is_string() ? m["profile"].get<std::string>() : "";
                if (p != "hump" && p != "step" && p != "const")
                    check.fail("'mass.profile' must be hump|step|const");
                else
                    c.mass.profile.shape = p;
            }
            if (check.number(m, "center", value)) c.mass.profile.center = value;
            if (check.number(m, "width", value)) {
                if (!(value > 0.0)) check.fail("'mass.width' must be positive");
                c.mass.profile.width = value;
            }
            if (check.number(m, "amplitude", value)) {
                if (!(value >= 0.0)) check.fail("'mass.amplitude' must be non-negative");
                c.mass.profile.amplitude = value;
            }
        }
    }

    if (root.contains("epsilon")) {
        const json& e = root["epsilon"];
        c.epsilons.clear();
        if (e.is_number()) {
            c.epsilons.push_back(e.get<double>());
        } else if (e.is_array()) {
            for (const auto& item : e)
                if (item.is_number())
                    c.epsilons.push_back(item.get<double>());
                else
                    check.fail("'epsilon' entries must be numbers");
        } else {
            check.fail("'epsilon' must be a number or an array of numbers");
        }
        for (double eps : c.epsilons)
            if (!(eps > 0.0 && eps <= 1.0)) {
                check.fail("'epsilon' values must lie in (0, 1]");
                break;
            }
        for (std::size_t i = 1; i < c.epsilons.size(); ++i)
            if (!(c.epsilons[i] < c.epsilons[i - 1])) {
                check.fail("'epsilon' ladder must be strictly decreasing");
                break;
            }
        if (c.epsilons.empty()) check.fail("'epsilon' must not be empty");
    }

    if (root.contains("snapshot_times")) {
        const json& s = root["snapshot_times"];
        c.snapshot_times.clear();
        if (!s.is_array() || s.empty()) {
            check.fail("'snapshot_times' must be a non-empty array");
        } else {
            for (const auto& item : s)
                if (item.is_number())
                    c.snapshot_times.push_back(item.get<double>());
                else
                    check.fail("'snapshot_times' entries must be numbers");
            if (!std::is_sorted(c.snapshot_times.begin(), c.snapshot_times.end()))
                check.fail("'snapshot_times' must be sorted");
            for (double t : c.snapshot_times)
                if (t < 0.0 || t > c.horizon + 1e-12) {
                    check.fail("'snapshot_times' must lie within [0, horizon]");
                    break;
                }
        }
    }

    if (root.contains("tolerances")) {
        const json& t = root["tolerances"];
        if (!t.is_object()) {
            check.fail("'tolerances' must be an object");
        } else {
            check.expect_keys(t, "tolerances", {},
                              {"energy_drift", "exponent_margin", "power_margin",
                               "noise_floor", "consistency_final"});
            auto positive = [&](const char* key, double& dst) {
                if (check.number(t, key, value)) {
                    if (!(value > 0.0))
                        check.fail(std::string("'tolerances.") + key + "' must be positive");
                    dst = value;
                }
            };
            positive("energy_drift", c.tolerances.energy_drift);
            positive("exponent_margin", c.tolerances.exponent_margin);
            positive("power_margin", c.tolerances.power_margin);
            positive("noise_floor", c.tolerances.noise_floor);
            positive("consistency_final", c.tolerances.consistency_final);
        }
    }

    if (root.contains("output_dir")) {
        if (root["output_dir"].is_string())
            c.output_dir = root["output_dir"].get<std::string>();
        else
            check.fail("'output_dir' must be a string");
    }

    // cross-field checks
    if (bad.empty()) {
        if (c.scheme == SchemeId::ImplicitFd && c.alpha != 1.0)
            check.fail("'scheme' implicit_fd requires alpha = 1");
        if (c.mass.kind == MassSpec::Kind::Delta || c.mass.kind == MassSpec::Kind::DeltaSquared) {
            if (!(c.mass.x0 > 0.0 && c.mass.x0 < c.domain_length))
                check.fail("'mass.x0' must lie strictly inside the domain");
        }
        if (c.mass.kind == MassSpec::Kind::Bounded &&
            !(c.mass.profile.center > 0.0 && c.mass.profile.center < c.domain_length))
            check.fail("'mass.center' must lie strictly inside the domain");
    }

    if (!bad.empty()) throw ConfigError(std::move(bad));
    return c;
}

std::string serialize_config(const SimulationConfig& c) {
    json root;
    root["alpha"] = c.alpha;
    root["domain_length"] = c.domain_length;
    root["grid_points"] = c.grid_points;
    root["dt"] = c.dt;
    root["horizon"] = c.horizon;
    root["scheme"] = scheme_name(c.scheme);
    root["fd_weight"] = c.fd_weight;
    json m;
    switch (c.mass.kind) {
        case MassSpec::Kind::Zero: m["case"] = "zero"; break;
        case MassSpec::Kind::Delta: m["case"] = "delta"; break;
        case MassSpec::Kind::DeltaSquared: m["case"] = "delta_squared"; break;
        case MassSpec::Kind::Bounded: m["case"] = "bounded"; break;
    }
    m["x0"] = c.mass.x0;
    m["profile"] = c.mass.profile.shape;
    m["center"] = c.mass.profile.center;
    m["width"] = c.mass.profile.width;
    m["amplitude"] = c.mass.profile.amplitude;
    root["mass"] = m;
    root["epsilon"] = c.epsilons;
    root["snapshot_times"] = c.snapshot_times;
    root["tolerances"] = {{"energy_drift", c.tolerances.energy_drift},
                          {"exponent_margin", c.tolerances.exponent_margin},
                          {"power_margin", c.tolerances.power_margin},
                          {"noise_floor", c.tolerances.noise_floor},
                          {"consistency_final", c.tolerances.consistency_final}};
    root["output_dir"] = c.output_dir;
    return root.dump(2);
}

std::string config_hash(const SimulationConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

Grid1D make_grid(const SimulationConfig& config) {
    return make_grid(config.domain_length, config.grid_points);
}

MassSpec materialize_mass(const SimulationConfig& config, const Grid1D& grid) {
    switch (config.mass.kind) {
        case MassSpec::Kind::Zero: return MassSpec::zero();
        case MassSpec::Kind::Delta: return MassSpec::delta(config.mass.x0);
        case MassSpec::Kind::DeltaSquared: return MassSpec::delta_squared(config.mass.x0);
        case MassSpec::Kind::Bounded: break;
    }
    const BoundedProfile& p = config.mass.profile;
    std::vector<double> table(static_cast<std::size_t>(grid.n), 0.0);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x[static_cast<std::size_t>(i)];
        double v = 0.0;
        if (p.shape == "hump") {
            const double y = (x - p.center) / p.width;
            if (std::abs(y) < 1.0)
                v = p.amplitude * std::exp(1.0 + 1.0 / (y * y - 1.0));   // peak = amplitude
        } else if (p.shape == "step") {
            if (std::abs(x - p.center) <= 0.5 * p.width) v = p.amplitude;
        } else {   // const
            v = p.amplitude;
        }
        table[static_cast<std::size_t>(i)] = v;
    }
    return MassSpec::bounded(std::move(table));
}

MassSpec mass_for_case(int case_id) {
    switch (case_id) {
        case 1: return MassSpec::zero();
        case 2: return MassSpec::delta(40.0);
        case 3: return MassSpec::delta_squared(40.0);
        default:
            throw std::invalid_argument("mass case must be 1, 2 or 3, got " +
                                        std::to_string(case_id));
    }
}

std::string scheme_name(SchemeId id) {
    return id == SchemeId::SpectralStrang ? "spectral_strang" : "implicit_fd";
}

} // namespace fkg
