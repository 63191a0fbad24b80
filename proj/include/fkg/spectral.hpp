#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "fkg/grid.hpp"

namespace fkg {

/// Complex DFT coefficients aligned with Grid1D::xi.
using Spectrum = std::vector<std::complex<double>>;

/// Forward/inverse DFT pair for one grid size, backed by FFTW (ESTIMATE
/// plans, so repeated runs take identical code paths). Convention:
/// forward_k = sum_j u_j exp(-i xi_k x_j * ...), plain unnormalized DFT;
/// the inverse carries the 1/n factor. One instance per simulation run;
/// an instance is not safe for concurrent use, distinct instances are.
class Dft {
public:
    explicit Dft(int n);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    int size() const { return n_; }

    void forward(std::span<const double> field, Spectrum& out) const;
    /// Inverse transform; the imaginary residue is discarded. Returns the
    /// largest |Im| seen (relative to the largest |coefficient|), which the
    /// real-field operations check against their tolerance.
    double inverse(const Spectrum& spec, std::span<double> out) const;

    void forward_complex(Spectrum& inout) const;
    void inverse_complex(Spectrum& inout) const;

private:
    struct Impl;
    int n_;
    std::unique_ptr<Impl> impl_;
};

/// (-Laplace)^alpha via the multiplier |xi|^{2 alpha}; alpha > 0.
/// Throws on non-positive alpha or length mismatch.
std::vector<double> frac_laplacian_apply(std::span<const double> field, double alpha,
                                         const Grid1D& grid);

/// L2 norm of (-Laplace)^{alpha/2} u, i.e. sqrt( (dx/n) sum |xi|^{2a} |u_hat|^2 ).
double frac_half_norm(std::span<const double> field, double alpha, const Grid1D& grid);

/// L2 norm computed on the spectral side (Parseval); used as the cross-check
/// counterpart of the physical-space quadrature norm.
double spectral_l2_norm(std::span<const double> field, const Grid1D& grid);

} // namespace fkg
