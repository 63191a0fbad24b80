#include "fkg/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fkg {

Grid1D make_grid(double length, int n) {
    if (!(length > 0.0))
        throw std::invalid_argument("make_grid: domain length must be positive, got " +
                                    std::to_string(length));
    if (n < 4)
        throw std::invalid_argument("make_grid: need at least 4 grid points, got " +
                                    std::to_string(n));
    if (n % 2 != 0)
        throw std::invalid_argument("make_grid: grid point count must be even, got " +
                                    std::to_string(n));

    Grid1D g;
    g.length = length;
    g.n = n;
    g.dx = length / n;
    g.x.resize(n);
    g.xi.resize(n);
    const double k0 = 2.0 * std::numbers::pi / length;
    for (int j = 0; j < n; ++j) {
        g.x[j] = j * g.dx;
        const int k = (j < n / 2) ? j : j - n;
        g.xi[j] = k0 * k;
    }
    return g;
}

} // namespace fkg
