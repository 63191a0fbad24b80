#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fkg/grid.hpp"
#include "fkg/mass.hpp"
#include "fkg/propagation.hpp"

namespace fkg {

struct BoundedProfile {
    std::string shape = "hump";   // hump | step | const
    double center = 35.0;
    double width = 4.0;           // hump: support half-width; step: full width
    double amplitude = 1.0;

    bool operator==(const BoundedProfile&) const = default;
};

struct MassConfig {
    MassSpec::Kind kind = MassSpec::Kind::Delta;
    double x0 = 40.0;
    BoundedProfile profile;   // used when kind == Bounded

    bool operator==(const MassConfig&) const = default;
};

struct Tolerances {
    double energy_drift = 1e-4;       // relative energy drift along a trajectory
    double exponent_margin = 0.1;     // slack on fitted moderateness/growth exponents
    double power_margin = 0.3;        // slack on the power-control decay exponent
    double noise_floor = 1e-10;       // differences below floor*norm count as zero
    double consistency_final = 1e-5;  // consistency: final difference must sit below

    bool operator==(const Tolerances&) const = default;
};

/// Everything needed to rerun an experiment bit-identically.
struct SimulationConfig {
    double alpha = 1.0;
    double domain_length = 100.0;
    int grid_points = 10000;
    double dt = 0.2;
    double horizon = 12.0;
    SchemeId scheme = SchemeId::ImplicitFd;
    double fd_weight = 0.25;
    MassConfig mass;
    std::vector<double> epsilons = {0.05};
    std::vector<double> snapshot_times = {0.0, 8.8, 10.2, 10.6, 11.0, 12.0};
    Tolerances tolerances;
    std::string output_dir = "out";

    bool operator==(const SimulationConfig&) const = default;
};

/// Carries every violation found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses and validates the documented JSON schema (docs/config.md).
/// Unknown keys are rejected; missing required keys are reported by name.
SimulationConfig parse_config(const std::string& text);

/// Canonical serialization (sorted keys); parse(serialize(c)) == c.
std::string serialize_config(const SimulationConfig& config);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const SimulationConfig& config);

Grid1D make_grid(const SimulationConfig& config);

/// Builds the MassSpec on the config's grid (bounded profiles are sampled).
MassSpec materialize_mass(const SimulationConfig& config, const Grid1D& grid);

/// Case ids used by the sweep/figure commands: 1 -> zero, 2 -> delta barrier
/// at x=40, 3 -> squared-delta barrier at x=40.
MassSpec mass_for_case(int case_id);

std::string scheme_name(SchemeId id);

} // namespace fkg
