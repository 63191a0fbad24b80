#pragma once

#include <span>

#include "fkg/grid.hpp"
#include "fkg/propagation.hpp"

namespace fkg {

/// sqrt(dx * sum u^2): the rectangle rule, exact trapezoid on a periodic
/// uniform grid. Throws on length mismatch.
double l2_norm(std::span<const double> samples, const Grid1D& grid);

struct EnergyRecord {
    double t = 0.0;
    double kinetic = 0.0;     // ||v||^2
    double elastic = 0.0;     // ||(-Lap)^{alpha/2} u||^2
    double potential = 0.0;   // ||sqrt(m) u||^2
    double total = 0.0;       // sum of the three, as stored
};

EnergyRecord energy(const FieldState& state, std::span<const double> mass, double alpha,
                    const Grid1D& grid);

/// ||u||_{L2} + ||(-Lap)^{alpha/2} u||_{L2} + ||v||_{L2}.
double triple_norm(const FieldState& state, double alpha, const Grid1D& grid);

/// L2-mass partition of u across a barrier. The incident (and reflected)
/// side is x >= barrier: the shipped experiments launch the bump at x = 50
/// against a barrier at x = 40, so `reflection` is the fraction of the mass
/// remaining on the bump's side.
struct ScatterRecord {
    double t = 0.0;
    double left_mass = 0.0;    // integral of u^2 over x < barrier
    double right_mass = 0.0;   // integral of u^2 over x >= barrier
    double reflection = 0.0;   // right_mass / (left_mass + right_mass)
};

ScatterRecord reflection_coefficient(const FieldState& state, double barrier_x,
                                     const Grid1D& grid);

/// Centroid of u^2 restricted to x < split_x (0 when that mass vanishes);
/// tracks the left-moving wave packet.
double left_centroid(const FieldState& state, double split_x, const Grid1D& grid);

} // namespace fkg
