#include "fkg/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fkg/kernels.hpp"

namespace fkg {

namespace {
// FFTW's planner mutates global state; executions are thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void check_field(std::span<const double> field, const Grid1D& grid, const char* who) {
    if (static_cast<int>(field.size()) != grid.n)
        throw std::invalid_argument(std::string(who) + ": field length " +
                                    std::to_string(field.size()) + " does not match grid n=" +
                                    std::to_string(grid.n));
}

void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0))
        throw std::invalid_argument(std::string(who) + ": alpha must be positive, got " +
                                    std::to_string(alpha));
}
} // namespace

struct Dft::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Dft::Dft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n < 1) throw std::invalid_argument("Dft: need n >= 1");
    impl_->in = fftw_alloc_complex(static_cast<std::size_t>(n));
    impl_->out = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard lock(planner_mutex());
    impl_->fwd = fftw_plan_dft_1d(n, impl_->in, impl_->out, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_1d(n, impl_->in, impl_->out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft::~Dft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
    fftw_free(impl_->in);
    fftw_free(impl_->out);
}

void Dft::forward(std::span<const double> field, Spectrum& out) const {
    for (int i = 0; i < n_; ++i) {
        impl_->in[i][0] = field[static_cast<std::size_t>(i)];
        impl_->in[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    out.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        out[static_cast<std::size_t>(i)] = {impl_->out[i][0], impl_->out[i][1]};
}

double Dft::inverse(const Spectrum& spec, std::span<double> out) const {
    double max_coef = 0.0;
    for (int i = 0; i < n_; ++i) {
        const auto& c = spec[static_cast<std::size_t>(i)];
        impl_->in[i][0] = c.real();
        impl_->in[i][1] = c.imag();
        max_coef = std::max(max_coef, std::abs(c.real()) + std::abs(c.imag()));
    }
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / n_;
    double max_imag = 0.0;
    for (int i = 0; i < n_; ++i) {
        out[static_cast<std::size_t>(i)] = impl_->out[i][0] * scale;
        max_imag = std::max(max_imag, std::abs(impl_->out[i][1]) * scale);
    }
    return max_coef > 0.0 ? max_imag / (max_coef * scale) : 0.0;
}

void Dft::forward_complex(Spectrum& inout) const {
    for (int i = 0; i < n_; ++i) {
        impl_->in[i][0] = inout[static_cast<std::size_t>(i)].real();
        impl_->in[i][1] = inout[static_cast<std::size_t>(i)].imag();
    }
    fftw_execute(impl_->fwd);
    for (int i = 0; i < n_; ++i)
        inout[static_cast<std::size_t>(i)] = {impl_->out[i][0], impl_->out[i][1]};
}

void Dft::inverse_complex(Spectrum& inout) const {
    for (int i = 0; i < n_; ++i) {
        impl_->in[i][0] = inout[static_cast<std::size_t>(i)].real();
        impl_->in[i][1] = inout[static_cast<std::size_t>(i)].imag();
    }
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i)
        inout[static_cast<std::size_t>(i)] = {impl_->out[i][0] * scale,
                                              impl_->out[i][1] * scale};
}

std::vector<double> frac_laplacian_apply(std::span<const double> field, double alpha,
                                         const Grid1D& grid) {
    check_alpha(alpha, "frac_laplacian_apply");
    check_field(field, grid, "frac_laplacian_apply");

    Dft dft(grid.n);
    Spectrum spec;
    dft.forward(field, spec);
    std::vector<double> mult(static_cast<std::size_t>(grid.n));
    for (int k = 0; k < grid.n; ++k)
        mult[static_cast<std::size_t>(k)] =
            std::pow(std::abs(grid.xi[static_cast<std::size_t>(k)]), 2.0 * alpha);
    kernels::scale_spectrum(spec, mult);

    std::vector<double> out(static_cast<std::size_t>(grid.n));
    const double residue = dft.inverse(spec, out);
    if (residue > 1e-10)
        throw std::runtime_error("frac_laplacian_apply: imaginary residue " +
                                 std::to_string(residue) + " exceeds 1e-10");
    return out;
}

double frac_half_norm(std::span<const double> field, double alpha, const Grid1D& grid) {
    check_alpha(alpha, "frac_half_norm");
    check_field(field, grid, "frac_half_norm");

    Dft dft(grid.n);
    Spectrum spec;
    dft.forward(field, spec);
    const double parseval = grid.dx / grid.n;
    const double total = kernels::blocked_sum(spec.size(), [&](std::size_t k) {
        const double w = std::pow(std::abs(grid.xi[k]), 2.0 * alpha);
        return w * std::norm(spec[k]);
    });
    return std::sqrt(parseval * total);
}

double spectral_l2_norm(std::span<const double> field, const Grid1D& grid) {
    check_field(field, grid, "spectral_l2_norm");
    Dft dft(grid.n);
    Spectrum spec;
    dft.forward(field, spec);
    const double total =
        kernels::blocked_sum(spec.size(), [&](std::size_t k) { return std::norm(spec[k]); });
    return std::sqrt(grid.dx / grid.n * total);
}

} // namespace fkg
