#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fkg/grid.hpp"
#include "fkg/spectral.hpp"

namespace fkg {

/// Displacement and velocity samples at one instant.
struct FieldState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

enum class SchemeId { SpectralStrang, ImplicitFd };

/// The compactly supported bump exp(1/((x-50)^2 - 1/4)) on |x-50| < 1/2 with
/// zero initial velocity. Throws if the domain does not contain [49.5, 50.5].
FieldState initial_bump(const Grid1D& grid);

/// Exact evolution of u_tt + (-Laplace)^alpha u = 0 by time t >= 0:
/// mode-wise cos / sin multipliers, with the zero mode's sin kernel replaced
/// by its limit t. Velocity evolves by the time derivative of the same
/// formula.
FieldState free_propagate(const FieldState& state, double t, double alpha,
                          const Grid1D& grid);

/// One Strang step: exact free half-step, exact mass-potential kick
/// v -= dt * m * u, exact free half-step. Second order in dt; the kick is
/// stable for m * dt^2 <= 4, which every shipped configuration satisfies
/// with orders of magnitude to spare.
FieldState step_spectral_strang(const FieldState& state, std::span<const double> mass,
                                double dt, double alpha, const Grid1D& grid);

/// One step of the weighted implicit finite-difference scheme (alpha = 1):
///   (u+ - 2u0 + u-)/dt^2 = (Dxx - m)(sigma u+ + (1-2sigma) u0 + sigma u-),
/// periodic 3-point stencil, solved by cyclic tridiagonal elimination.
/// sigma >= 1/4 is unconditionally stable; sigma = 1/2 averages only the old
/// and new levels. The first step is bootstrapped by the Taylor expansion
/// u1 = u0 + dt v0 + dt^2/2 (Dxx - m) u0 and velocity is reconstructed by a
/// central difference of the stored levels (one lookahead solve).
FieldState step_implicit_fd(const FieldState& state, std::span<const double> mass,
                            double dt, const Grid1D& grid, double sigma = 0.25);

struct EvolveOptions {
    SchemeId scheme = SchemeId::SpectralStrang;
    double alpha = 1.0;
    double dt = 0.005;
    double horizon = 12.0;                // T
    std::vector<double> snapshot_times;   // sorted, within [0, T], non-empty
    double fd_weight = 0.25;              // sigma for ImplicitFd
};

struct EvolveResult {
    std::vector<FieldState> snapshots;    // one per requested time, in order
    std::vector<double> offsets;          // t_step - t_request, |offset| <= dt/2
    double dt_used = 0.0;
    long long steps = 0;
};

/// Runs the requested scheme from state0 to T, capturing snapshots. The step
/// count is chosen so dt_used <= dt divides T; if some snapshot time then
/// fails to land on a step boundary, the count is raised (up to 16x) until
/// all do, else snapshots map to the nearest step with the offset recorded.
EvolveResult evolve(const FieldState& state0, std::span<const double> mass,
                    const EvolveOptions& opt, const Grid1D& grid);

/// Stepper with precomputed half-step multiplier tables and a per-run FFT
/// workspace; evolve() uses it, and it is exposed for callers that want to
/// drive trajectories manually.
class StrangStepper {
public:
    StrangStepper(const Grid1D& grid, std::span<const double> mass, double dt,
                  double alpha);
    void step(FieldState& state);

private:
    double dt_;
    std::vector<double> mass_;
    std::vector<double> cos_half_, sinc_half_, wsin_half_;
    Dft dft_;
    Spectrum uh_, vh_;
};

/// Two-level driver for the implicit scheme; owns the factored cyclic system.
class ImplicitFdStepper {
public:
    ImplicitFdStepper(const Grid1D& grid, std::span<const double> mass, double dt,
                      double sigma);

    /// u1 from (u0, v0) by the Taylor bootstrap.
    std::vector<double> bootstrap(const FieldState& s0) const;
    /// next level from (now, old).
    std::vector<double> advance(std::span<const double> now,
                                std::span<const double> old) const;
    double dt() const { return dt_; }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    double dt_;
};

} // namespace fkg
