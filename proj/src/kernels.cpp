#include "fkg/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fkg::kernels {

double sum_squares(std::span<const double> u) {
    return blocked_sum(u.size(), [&](std::size_t i) { return u[i] * u[i]; });
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double weighted_square_sum(std::span<const double> w, std::span<const double> u) {
    assert(w.size() == u.size());
    return blocked_sum(u.size(), [&](std::size_t i) { return w[i] * u[i] * u[i]; });
}

double range_sum_squares(std::span<const double> u, std::size_t begin, std::size_t end) {
    end = std::min(end, u.size());
    if (begin >= end) return 0.0;
    return blocked_sum(end - begin,
                       [&](std::size_t i) { return u[begin + i] * u[begin + i]; });
}

double range_moment(std::span<const double> x, std::span<const double> u,
                    std::size_t begin, std::size_t end) {
    assert(x.size() == u.size());
    end = std::min(end, u.size());
    if (begin >= end) return 0.0;
    return blocked_sum(end - begin, [&](std::size_t i) {
        return x[begin + i] * u[begin + i] * u[begin + i];
    });
}

double max_abs(std::span<const double> u) {
    // max is exact (no rounding), so a plain reduction is already deterministic
    double m = 0.0;
    const long long n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long long i = 0; i < n; ++i) m = std::max(m, std::abs(u[i]));
    return m;
}

void mass_kick(std::span<const double> u, std::span<const double> m, double dt,
               std::span<double> v) {
    assert(u.size() == m.size() && u.size() == v.size());
    const long long n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) v[i] -= dt * m[i] * u[i];
}

void propagator_combine(std::span<std::complex<double>> uh,
                        std::span<std::complex<double>> vh,
                        std::span<const double> c, std::span<const double> s,
                        std::span<const double> ws) {
    assert(uh.size() == vh.size() && uh.size() == c.size());
    const long long n = static_cast<long long>(uh.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const std::complex<double> a = uh[i];
        const std::complex<double> b = vh[i];
        uh[i] = c[i] * a + s[i] * b;
        vh[i] = -ws[i] * a + c[i] * b;
    }
}

void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult) {
    assert(spec.size() == mult.size());
    const long long n = static_cast<long long>(spec.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) spec[i] *= mult[i];
}

void second_difference(std::span<const double> u, double inv_dx2, std::span<double> out) {
    assert(u.size() == out.size() && u.size() >= 2);
    const long long n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const std::size_t im = (i == 0) ? u.size() - 1 : static_cast<std::size_t>(i - 1);
        const std::size_t ip = (i == n - 1) ? 0 : static_cast<std::size_t>(i + 1);
        out[i] = (u[im] - 2.0 * u[i] + u[ip]) * inv_dx2;
    }
}

void periodic_convolution(std::span<const double> f, std::span<const double> kernel,
                          std::span<double> out) {
    assert(out.size() == f.size());
    assert(kernel.size() % 2 == 1 && kernel.size() <= f.size());
    const long long n = static_cast<long long>(f.size());
    const long long r = static_cast<long long>(kernel.size() / 2);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long long j = -r; j <= r; ++j) {
            long long k = i + j;
            if (k < 0) k += n;
            if (k >= n) k -= n;
            acc += kernel[static_cast<std::size_t>(j + r)] * f[static_cast<std::size_t>(k)];
        }
        out[i] = acc;
    }
}

CyclicTridiagonal::CyclicTridiagonal(std::span<const double> diag, double off)
    : n_(diag.size()), off_(off) {
    if (n_ < 3) throw std::invalid_argument("CyclicTridiagonal: need at least 3 rows");
    // A = A1 + gamma*e0 v^T with v = (1, 0, ..., 0, off/gamma); A1 is plain
    // tridiagonal with modified first/last diagonal entries.
    gamma_ = -diag[0];
    dhat_.assign(diag.begin(), diag.end());
    dhat_[0] -= gamma_;
    dhat_[n_ - 1] -= off_ * off_ / gamma_;
    // in-place Thomas elimination of the modified diagonal
    for (std::size_t i = 1; i < n_; ++i) {
        const double w = off_ / dhat_[i - 1];
        dhat_[i] = dhat_[i] - w * off_;
        if (dhat_[i] == 0.0)
            throw std::runtime_error("CyclicTridiagonal: singular pivot");
    }
    std::vector<double> rank1(n_, 0.0);
    rank1[0] = gamma_;
    rank1[n_ - 1] = off_;
    z_.resize(n_);
    work_.resize(n_);
    thomas(rank1, z_);
    denom_ = 1.0 + z_[0] + off_ * z_[n_ - 1] / gamma_;
    if (denom_ == 0.0) throw std::runtime_error("CyclicTridiagonal: singular correction");
}

void CyclicTridiagonal::thomas(std::span<const double> b, std::span<double> x) const {
    std::vector<double>& y = work_;
    y[0] = b[0];
    for (std::size_t i = 1; i < n_; ++i) y[i] = b[i] - (off_ / dhat_[i - 1]) * y[i - 1];
    x[n_ - 1] = y[n_ - 1] / dhat_[n_ - 1];
    for (std::size_t i = n_ - 1; i-- > 0;) x[i] = (y[i] - off_ * x[i + 1]) / dhat_[i];
}

void CyclicTridiagonal::solve(std::span<const double> b, std::span<double> x) const {
    assert(b.size() == n_ && x.size() == n_);
    thomas(b, x);
    const double fact = (x[0] + off_ * x[n_ - 1] / gamma_) / denom_;
    for (std::size_t i = 0; i < n_; ++i) x[i] -= fact * z_[i];
}

namespace ref {

double sum_squares(std::span<const double> u) {
    double acc = 0.0;
    for (double v : u) acc += v * v;
    return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_square_sum(std::span<const double> w, std::span<const double> u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += w[i] * u[i] * u[i];
    return acc;
}

double max_abs(std::span<const double> u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

void mass_kick(std::span<const double> u, std::span<const double> m, double dt,
               std::span<double> v) {
    for (std::size_t i = 0; i < u.size(); ++i) v[i] -= dt * m[i] * u[i];
}

void propagator_combine(std::span<std::complex<double>> uh,
                        std::span<std::complex<double>> vh,
                        std::span<const double> c, std::span<const double> s,
                        std::span<const double> ws) {
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const std::complex<double> a = uh[i];
        const std::complex<double> b = vh[i];
        uh[i] = c[i] * a + s[i] * b;
        vh[i] = -ws[i] * a + c[i] * b;
    }
}

void second_difference(std::span<const double> u, double inv_dx2, std::span<double> out) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = (i == 0) ? n - 1 : i - 1;
        const std::size_t ip = (i == n - 1) ? 0 : i + 1;
        out[i] = (u[im] - 2.0 * u[i] + u[ip]) * inv_dx2;
    }
}

void periodic_convolution(std::span<const double> f, std::span<const double> kernel,
                          std::span<double> out) {
    const long long n = static_cast<long long>(f.size());
    const long long r = static_cast<long long>(kernel.size() / 2);
    for (long long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long long j = -r; j <= r; ++j) {
            long long k = i + j;
            if (k < 0) k += n;
            if (k >= n) k -= n;
            acc += kernel[static_cast<std::size_t>(j + r)] * f[static_cast<std::size_t>(k)];
        }
        out[i] = acc;
    }
}

} // namespace ref
} // namespace fkg::kernels
