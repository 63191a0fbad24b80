#include "fkg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fkg/kernels.hpp"
#include "fkg/spectral.hpp"

namespace fkg {

namespace {
std::size_t split_index(double barrier_x, const Grid1D& grid) {
    if (!grid.contains(barrier_x))
        throw std::invalid_argument("barrier position outside the domain");
    return static_cast<std::size_t>(
        std::lower_bound(grid.x.begin(), grid.x.end(), barrier_x) - grid.x.begin());
}
} // namespace

double l2_norm(std::span<const double> samples, const Grid1D& grid) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw std::invalid_argument("l2_norm: sample length does not match grid");
    return std::sqrt(grid.dx * kernels::sum_squares(samples));
}

EnergyRecord energy(const FieldState& state, std::span<const double> mass, double alpha,
                    const Grid1D& grid) {
    if (static_cast<int>(state.u.size()) != grid.n ||
        static_cast<int>(state.v.size()) != grid.n ||
        static_cast<int>(mass.size()) != grid.n)
        throw std::invalid_argument("energy: lengths do not match grid");
    EnergyRecord e;
    e.t = state.t;
    e.kinetic = grid.dx * kernels::sum_squares(state.v);
    const double half = frac_half_norm(state.u, alpha, grid);
    e.elastic = half * half;
    e.potential = grid.dx * kernels::weighted_square_sum(mass, state.u);
    e.total = e.kinetic + e.elastic + e.potential;
    return e;
}

double triple_norm(const FieldState& state, double alpha, const Grid1D& grid) {
    return l2_norm(state.u, grid) + frac_half_norm(state.u, alpha, grid) +
           l2_norm(state.v, grid);
}

ScatterRecord reflection_coefficient(const FieldState& state, double barrier_x,
                                     const Grid1D& grid) {
    if (static_cast<int>(state.u.size()) != grid.n)
        throw std::invalid_argument("reflection_coefficient: state does not match grid");
    const std::size_t split = split_index(barrier_x, grid);
    ScatterRecord r;
    r.t = state.t;
    r.left_mass = grid.dx * kernels::range_sum_squares(state.u, 0, split);
    r.right_mass = grid.dx * kernels::range_sum_squares(state.u, split, state.u.size());
    const double total = r.left_mass + r.right_mass;
    r.reflection = total > 0.0 ? r.right_mass / total : 0.0;
    return r;
}

double left_centroid(const FieldState& state, double split_x, const Grid1D& grid) {
    if (static_cast<int>(state.u.size()) != grid.n)
        throw std::invalid_argument("left_centroid: state does not match grid");
    const std::size_t split = split_index(split_x, grid);
    const double mass = kernels::range_sum_squares(state.u, 0, split);
    if (mass <= 0.0) return 0.0;
    return kernels::range_moment(grid.x, state.u, 0, split) / mass;
}

} // namespace fkg
