#pragma once

#include <string>
#include <vector>

#include "fkg/config.hpp"
#include "fkg/diagnostics.hpp"
#include "fkg/mass.hpp"
#include "fkg/propagation.hpp"

namespace fkg {

enum class NormId { L2, Triple };

/// A family of runs over a strictly decreasing ladder of widths, sharing one
/// grid and integrator setup.
struct EpsilonNetPlan {
    std::vector<double> epsilons;
    SimulationConfig base;
    NormId norm = NormId::L2;
};

struct EpsRunRecord {
    double eps = 0.0;
    double norm = 0.0;       // per-eps scalar: sup-in-time solution norm, or a difference norm
    double ref_norm = 0.0;   // sup-in-time solution norm of the run, the floor scale
    bool floored = false;    // norm fell below noise_floor * ref_norm
};

/// Everything a verdict needs is stored, so verdicts recompute from the
/// report alone (see the *_verdict free functions).
struct ConvergenceReport {
    std::string experiment;
    std::vector<EpsRunRecord> runs;
    std::vector<double> pair_diffs;   // ||u_{eps_i} - u_{eps_{i+1}}|| at the final time
    bool fitted = false;
    LogLogFit fit;                    // of run norms vs eps (or 1/eps for growth)
    double bound = 0.0;               // verdict threshold (growth bound, k ladder top, p)
    double margin = 0.0;
    double tolerance = 0.0;           // consistency: required final level
    bool verdict = false;
};

bool existence_verdict(const ConvergenceReport& r);
bool uniqueness_exp_verdict(const ConvergenceReport& r);
bool uniqueness_power_verdict(const ConvergenceReport& r);
bool consistency_verdict(const ConvergenceReport& r);

/// Runs the regularized problem per eps and fits the growth of the
/// sup-in-time solution norm against 1/eps; the verdict compares the fitted
/// growth exponent with half the measured sup-norm exponent of the mass net
/// (plus the configured margin).
ConvergenceReport existence_experiment(const EpsilonNetPlan& plan);

/// Per eps, runs the base mass and its multiplicative (1 + e^{-1/eps})
/// perturbation and measures the solution difference at the final time.
/// Verdict: the differences decay faster than eps^6 or sit at the noise
/// floor.
ConvergenceReport uniqueness_experiment(const EpsilonNetPlan& plan);

/// Negative control: perturbation of exact order p (amplitude held fixed
/// across the ladder at the largest-eps sup norm). Verdict: fitted decay
/// exponent within the configured margin of p.
ConvergenceReport uniqueness_experiment_power(const EpsilonNetPlan& plan, double p);

/// Bounded coefficients only: compares each mollified run against the run
/// with the unmollified sampled coefficient on the same grid and scheme, so
/// discretization error cancels and the mollification error remains.
ConvergenceReport consistency_experiment(const MassSpec& bounded_mass,
                                         const EpsilonNetPlan& plan);

struct WallSnapshot {
    FieldState state;
    ScatterRecord scatter;
    double left_centroid = 0.0;   // centroid of the u^2 mass left of x = 50
};

struct WallEffectResult {
    int case_id = 0;
    double eps = 0.0;
    SchemeId scheme = SchemeId::ImplicitFd;
    double dt_used = 0.0;
    double barrier = 40.0;
    std::vector<double> times;
    std::vector<WallSnapshot> snaps;
};

/// The scattering experiment: bump launched at x=50 against the case's
/// barrier at x=40 on the [0,100) box, snapshots at t in
/// {0, 8.8, 10.2, 10.6, 11.0, 12.0}. The implicit scheme runs at the coarse
/// dt=0.2; the spectral scheme at dt=0.005 serves as the accuracy cross-check.
WallEffectResult wall_effect_experiment(int case_id, double eps, SchemeId scheme);

/// Config preset shared by the wall-effect runs.
SimulationConfig wall_effect_config(int case_id, double eps, SchemeId scheme);

} // namespace fkg
