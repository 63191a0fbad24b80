#pragma once

#include <vector>

namespace fkg {

/// Uniform periodic grid on [0, L). Wavenumbers follow the usual DFT
/// layout: k = 0, 1, ..., n/2-1, -n/2, ..., -1, scaled by 2*pi/L, so the
/// array has exactly one zero entry and +/- pairs except the Nyquist mode.
struct Grid1D {
    double length = 0.0;      // L
    int n = 0;                // number of samples, even, >= 4
    double dx = 0.0;          // L / n
    std::vector<double> x;    // sample positions x_j = j*dx
    std::vector<double> xi;   // angular wavenumbers

    bool contains(double pos) const { return pos >= 0.0 && pos < length; }
};

/// Builds a grid; throws std::invalid_argument for odd n, n < 4 or L <= 0.
Grid1D make_grid(double length, int n);

} // namespace fkg
