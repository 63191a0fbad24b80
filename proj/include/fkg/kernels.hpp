#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fkg::kernels {

// Grid-sized inner loops, parallelized with OpenMP. Two contracts hold for
// every kernel here:
//
//  * element maps (kick, stencil, spectral combine, convolution) write each
//    output element from a self-contained expression, so the result is
//    bitwise identical for any thread count;
//  * reductions accumulate over fixed-size blocks (block layout depends only
//    on the array length, never on the thread count) and the per-block
//    partials are summed serially in index order, so sums are bitwise
//    reproducible as well.
//
// The naive serial implementations live in kernels::ref; tests compare the
// two and tools/fkg_bench times them.

inline constexpr std::size_t kReductionBlock = 4096;

/// Deterministic blocked sum of term(i) for i in [0, n).
template <class Term>
double blocked_sum(std::size_t n, Term term) {
    if (n == 0) return 0.0;
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    if (blocks == 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += term(i);
        return acc;
    }
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t hi = std::min(lo + kReductionBlock, n);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double sum_squares(std::span<const double> u);
double dot(std::span<const double> a, std::span<const double> b);
/// sum of w[i] * u[i]^2 (quadrature of w u^2).
double weighted_square_sum(std::span<const double> w, std::span<const double> u);
/// sum of u[i]^2 over the index range [begin, end).
double range_sum_squares(std::span<const double> u, std::size_t begin, std::size_t end);
/// sum of x[i] * u[i]^2 over [begin, end).
double range_moment(std::span<const double> x, std::span<const double> u,
                    std::size_t begin, std::size_t end);
double max_abs(std::span<const double> u);

/// v -= dt * m * u, elementwise.
void mass_kick(std::span<const double> u, std::span<const double> m, double dt,
               std::span<double> v);

/// (uh, vh) <- (c*uh + s*vh, -ws*uh + c*vh), elementwise; the tables c, s, ws
/// encode cos(t*w), sin(t*w)/w and w*sin(t*w) of a wave propagator.
void propagator_combine(std::span<std::complex<double>> uh,
                        std::span<std::complex<double>> vh,
                        std::span<const double> c, std::span<const double> s,
                        std::span<const double> ws);

/// spec[i] *= mult[i].
void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult);

/// out = (u[i-1] - 2 u[i] + u[i+1]) * inv_dx2 with periodic wrap.
void second_difference(std::span<const double> u, double inv_dx2, std::span<double> out);

/// Periodic discrete convolution with a centered odd-length kernel:
/// out[i] = sum_j kernel[j] * f[i + j - radius], radius = kernel.size()/2.
void periodic_convolution(std::span<const double> f, std::span<const double> kernel,
                          std::span<double> out);

/// Cyclic tridiagonal solver (Thomas factorization + Sherman-Morrison rank-1
/// correction for the periodic corner entries). Off-diagonal and corner
/// entries share one constant value; the diagonal varies. Factored once,
/// solved many times. Solves are serial (sequential recurrences) and reuse an
/// internal scratch buffer, so one instance must not solve concurrently.
class CyclicTridiagonal {
public:
    CyclicTridiagonal(std::span<const double> diag, double off);

    /// x = A^{-1} b; b and x may alias.
    void solve(std::span<const double> b, std::span<double> x) const;

private:
    void thomas(std::span<const double> b, std::span<double> x) const;

    std::size_t n_;
    double off_;
    double gamma_;
    std::vector<double> dhat_;   // eliminated diagonal of the corner-free matrix
    std::vector<double> z_;      // A1^{-1} applied to the rank-1 column
    double denom_;               // 1 + v^T z
    mutable std::vector<double> work_;
};

namespace ref {
// Serial reference implementations: plain left-to-right loops, no blocking.
double sum_squares(std::span<const double> u);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_square_sum(std::span<const double> w, std::span<const double> u);
double max_abs(std::span<const double> u);
void mass_kick(std::span<const double> u, std::span<const double> m, double dt,
               std::span<double> v);
void propagator_combine(std::span<std::complex<double>> uh,
                        std::span<std::complex<double>> vh,
                        std::span<const double> c, std::span<const double> s,
                        std::span<const double> ws);
void second_difference(std::span<const double> u, double inv_dx2, std::span<double> out);
void periodic_convolution(std::span<const double> f, std::span<const double> kernel,
                          std::span<double> out);
} // namespace ref

} // namespace fkg::kernels
