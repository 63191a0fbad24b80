#pragma once

#include <span>
#include <string>
#include <vector>

#include "fkg/grid.hpp"

namespace fkg {

/// Compactly supported bump c*exp(1/(x^2-1)) on |x|<1, zero outside, with c
/// fixed by quadrature so the integral over the line is 1.
double mollifier(double x);

/// The normalization constant c (computed once by adaptive Simpson).
double mollifier_constant();

/// Singular (or bounded) mass coefficient, before regularization.
struct MassSpec {
    enum class Kind { Zero, Delta, DeltaSquared, Bounded };

    Kind kind = Kind::Zero;
    double x0 = 0.0;             // center for Delta / DeltaSquared
    std::vector<double> table;   // grid samples for Bounded

    static MassSpec zero() { return {}; }
    static MassSpec delta(double x0) { return {Kind::Delta, x0, {}}; }
    static MassSpec delta_squared(double x0) { return {Kind::DeltaSquared, x0, {}}; }
    static MassSpec bounded(std::vector<double> samples) {
        return {Kind::Bounded, 0.0, std::move(samples)};
    }

    std::string name() const;
    void validate(const Grid1D& grid) const;
};

/// Smooth mollified mass samples for one value of the width parameter.
struct RegularizedMass {
    double eps = 1.0;
    std::vector<double> samples;
    double sup_norm = 0.0;
};

/// Builds m_eps on the grid:
///   Zero         -> 0
///   Delta        -> (1/eps) * mollifier((x - x0)/eps)
///   DeltaSquared -> the square of the Delta samples
///   Bounded      -> discrete convolution of the table with the sampled
///                   mollifier (weights normalized to unit sum, so constants
///                   are reproduced exactly), negatives clipped at 0
/// Throws for eps outside (0,1] or a center within eps of the boundary.
/// Widths under 5*dx are allowed but warn on stderr (mollifier under-resolved).
RegularizedMass regularize(const MassSpec& spec, double eps, const Grid1D& grid);

/// Least-squares fit of log(y) = exponent * log(x) + intercept.
struct LogLogFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;   // RMS of log-space residuals
};
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// sup-norm growth of the net m_eps: fitted slope of log sup vs log(1/eps).
struct ModeratenessReport {
    std::vector<double> eps;
    std::vector<double> sup_norms;
    double exponent = 0.0;
    double residual = 0.0;
};
ModeratenessReport moderateness_exponent(const MassSpec& spec,
                                         std::span<const double> eps_list,
                                         const Grid1D& grid);

/// m_eps * (1 + exp(-1/eps)): differs from the base by less than any power
/// of eps, the positive control for the uniqueness experiments.
RegularizedMass perturb_negligible(const RegularizedMass& base);

/// m_eps + eps^p * scale * bump, with a fixed width-1, height-1 bump centered
/// at the base's sup location: a perturbation of exact order p, the negative
/// control. The caller picks the amplitude scale (the harness holds it fixed
/// across an eps ladder so the measured response decays like eps^p).
/// Throws for p <= 0.
RegularizedMass perturb_power(const RegularizedMass& base, double p, double scale,
                              const Grid1D& grid);

} // namespace fkg
