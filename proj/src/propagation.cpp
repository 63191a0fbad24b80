#include "fkg/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fkg/kernels.hpp"

namespace fkg {

namespace {

void check_state(const FieldState& s, const Grid1D& grid, const char* who) {
    if (static_cast<int>(s.u.size()) != grid.n || static_cast<int>(s.v.size()) != grid.n)
        throw std::invalid_argument(std::string(who) + ": state length does not match grid");
}

void check_mass(std::span<const double> m, const Grid1D& grid, const char* who) {
    if (static_cast<int>(m.size()) != grid.n)
        throw std::invalid_argument(std::string(who) + ": mass length does not match grid");
}

// cos(t w), sin(t w)/w (limit t at w=0) and w sin(t w) for w = |xi|^alpha.
void propagator_tables(const Grid1D& grid, double alpha, double t,
                       std::vector<double>& c, std::vector<double>& s,
                       std::vector<double>& ws) {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    c.resize(n);
    s.resize(n);
    ws.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::pow(std::abs(grid.xi[k]), alpha);
        if (w == 0.0) {
            c[k] = 1.0;
            s[k] = t;
            ws[k] = 0.0;
        } else {
            const double sn = std::sin(t * w);
            c[k] = std::cos(t * w);
            s[k] = sn / w;
            ws[k] = sn * w;
        }
    }
}

} // namespace

FieldState initial_bump(const Grid1D& grid) {
    if (!(grid.contains(49.5) && grid.contains(50.5)))
        throw std::invalid_argument("initial_bump: grid does not cover [49.5, 50.5]");
    FieldState s;
    s.t = 0.0;
    s.u.assign(static_cast<std::size_t>(grid.n), 0.0);
    s.v.assign(static_cast<std::size_t>(grid.n), 0.0);
    for (int i = 0; i < grid.n; ++i) {
        const double y = grid.x[static_cast<std::size_t>(i)] - 50.0;
        if (std::abs(y) < 0.5)
            s.u[static_cast<std::size_t>(i)] = std::exp(1.0 / (y * y - 0.25));
    }
    return s;
}

FieldState free_propagate(const FieldState& state, double t, double alpha,
                          const Grid1D& grid) {
    if (!(t >= 0.0))
        throw std::invalid_argument("free_propagate: t must be non-negative");
    if (!(alpha > 0.0))
        throw std::invalid_argument("free_propagate: alpha must be positive");
    check_state(state, grid, "free_propagate");

    std::vector<double> c, s, ws;
    propagator_tables(grid, alpha, t, c, s, ws);

    Dft dft(grid.n);
    Spectrum uh, vh;
    dft.forward(state.u, uh);
    dft.forward(state.v, vh);
    kernels::propagator_combine(uh, vh, c, s, ws);

    FieldState out;
    out.t = state.t + t;
    out.u.resize(static_cast<std::size_t>(grid.n));
    out.v.resize(static_cast<std::size_t>(grid.n));
    dft.inverse(uh, out.u);
    dft.inverse(vh, out.v);
    return out;
}

StrangStepper::StrangStepper(const Grid1D& grid, std::span<const double> mass, double dt,
                             double alpha)
    : dt_(dt), mass_(mass.begin(), mass.end()), dft_(grid.n) {
    if (!(dt > 0.0)) throw std::invalid_argument("StrangStepper: dt must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("StrangStepper: alpha must be positive");
    check_mass(mass, grid, "StrangStepper");
    propagator_tables(grid, alpha, dt / 2.0, cos_half_, sinc_half_, wsin_half_);
}

void StrangStepper::step(FieldState& state) {
    auto half_free = [&] {
        dft_.forward(state.u, uh_);
        dft_.forward(state.v, vh_);
        kernels::propagator_combine(uh_, vh_, cos_half_, sinc_half_, wsin_half_);
        dft_.inverse(uh_, state.u);
        dft_.inverse(vh_, state.v);
    };
    half_free();
    kernels::mass_kick(state.u, mass_, dt_, state.v);
    half_free();
    state.t += dt_;
}

FieldState step_spectral_strang(const FieldState& state, std::span<const double> mass,
                                double dt, double alpha, const Grid1D& grid) {
    check_state(state, grid, "step_spectral_strang");
    StrangStepper stepper(grid, mass, dt, alpha);
    FieldState out = state;
    stepper.step(out);
    return out;
}

struct ImplicitFdStepper::Impl {
    Impl(const Grid1D& grid, std::span<const double> mass, double dt, double sigma)
        : n(static_cast<std::size_t>(grid.n)),
          inv_dx2(1.0 / (grid.dx * grid.dx)),
          sigma(sigma),
          mass(mass.begin(), mass.end()),
          solver(make_diag(grid, mass, dt, sigma), -sigma / (grid.dx * grid.dx)) {}

    static std::vector<double> make_diag(const Grid1D& grid, std::span<const double> mass,
                                         double dt, double sigma) {
        std::vector<double> diag(static_cast<std::size_t>(grid.n));
        const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
        for (std::size_t i = 0; i < diag.size(); ++i)
            diag[i] = 1.0 / (dt * dt) + sigma * (2.0 * inv_dx2 + mass[i]);
        return diag;
    }

    // (Dxx - m) u
    void apply_operator(std::span<const double> u, std::span<double> out) const {
        kernels::second_difference(u, inv_dx2, out);
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < nn; ++i) out[i] -= mass[static_cast<std::size_t>(i)] * u[i];
    }

    std::size_t n;
    double inv_dx2;
    double sigma;
    std::vector<double> mass;
    kernels::CyclicTridiagonal solver;
};

ImplicitFdStepper::ImplicitFdStepper(const Grid1D& grid, std::span<const double> mass,
                                     double dt, double sigma)
    : dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ImplicitFdStepper: dt must be positive");
    if (!(sigma >= 0.25 && sigma <= 1.0))
        throw std::invalid_argument("ImplicitFdStepper: weight must lie in [0.25, 1]");
    check_mass(mass, grid, "ImplicitFdStepper");
    impl_ = std::make_shared<Impl>(grid, mass, dt, sigma);
}

std::vector<double> ImplicitFdStepper::bootstrap(const FieldState& s0) const {
    std::vector<double> lu(impl_->n);
    impl_->apply_operator(s0.u, lu);
    std::vector<double> u1(impl_->n);
    const long long nn = static_cast<long long>(impl_->n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i)
        u1[i] = s0.u[i] + dt_ * s0.v[i] + 0.5 * dt_ * dt_ * lu[i];
    return u1;
}

std::vector<double> ImplicitFdStepper::advance(std::span<const double> now,
                                               std::span<const double> old) const {
    const double inv_dt2 = 1.0 / (dt_ * dt_);
    std::vector<double> lnow(impl_->n), lold(impl_->n), rhs(impl_->n);
    impl_->apply_operator(now, lnow);
    impl_->apply_operator(old, lold);
    const double wc = 1.0 - 2.0 * impl_->sigma;
    const long long nn = static_cast<long long>(impl_->n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i)
        rhs[i] = (2.0 * now[i] - old[i]) * inv_dt2 + wc * lnow[i] + impl_->sigma * lold[i];
    std::vector<double> next(impl_->n);
    impl_->solver.solve(rhs, next);
    return next;
}

FieldState step_implicit_fd(const FieldState& state, std::span<const double> mass,
                            double dt, const Grid1D& grid, double sigma) {
    check_state(state, grid, "step_implicit_fd");
    ImplicitFdStepper stepper(grid, mass, dt, sigma);
    std::vector<double> u1 = stepper.bootstrap(state);
    std::vector<double> u2 = stepper.advance(u1, state.u);
    FieldState out;
    out.t = state.t + dt;
    out.u = std::move(u1);
    out.v.resize(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i)
        out.v[static_cast<std::size_t>(i)] =
            (u2[static_cast<std::size_t>(i)] - state.u[static_cast<std::size_t>(i)]) /
            (2.0 * dt);
    return out;
}

namespace {

long long pick_step_count(double T, double dt_req, std::span<const double> snaps) {
    const long long k0 =
        std::max<long long>(1, static_cast<long long>(std::ceil(T / dt_req - 1e-12)));
    const double tol = 1e-9 * std::max(T, 1.0);
    for (long long k = k0; k <= 16 * k0; ++k) {
        const double dt = T / static_cast<double>(k);
        bool ok = true;
        for (double s : snaps) {
            const double hit = std::round(s / dt) * dt;
            if (std::abs(hit - s) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return k;
    }
    return k0;
}

} // namespace

EvolveResult evolve(const FieldState& state0, std::span<const double> mass,
                    const EvolveOptions& opt, const Grid1D& grid) {
    check_state(state0, grid, "evolve");
    check_mass(mass, grid, "evolve");
    if (!(opt.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (!(opt.horizon >= 0.0)) throw std::invalid_argument("evolve: T must be non-negative");
    if (opt.snapshot_times.empty())
        throw std::invalid_argument("evolve: snapshot list must not be empty");
    if (!std::is_sorted(opt.snapshot_times.begin(), opt.snapshot_times.end()))
        throw std::invalid_argument("evolve: snapshot times must be sorted");
    for (double s : opt.snapshot_times)
        if (s < 0.0 || s > opt.horizon + 1e-12)
            throw std::invalid_argument("evolve: snapshot time " + std::to_string(s) +
                                        " outside [0, T]");
    if (opt.scheme == SchemeId::ImplicitFd && opt.alpha != 1.0)
        throw std::invalid_argument("evolve: the implicit FD scheme requires alpha = 1");

    EvolveResult res;
    if (opt.horizon == 0.0) {
        for (double s : opt.snapshot_times) {
            res.snapshots.push_back(state0);
            res.offsets.push_back(-s);
        }
        res.dt_used = opt.dt;
        return res;
    }

    res.steps = pick_step_count(opt.horizon, opt.dt, opt.snapshot_times);
    res.dt_used = opt.horizon / static_cast<double>(res.steps);

    // requested time -> step index, preserving request order
    std::vector<long long> snap_step(opt.snapshot_times.size());
    for (std::size_t i = 0; i < opt.snapshot_times.size(); ++i) {
        long long k = std::llround(opt.snapshot_times[i] / res.dt_used);
        k = std::clamp<long long>(k, 0, res.steps);
        snap_step[i] = k;
        res.offsets.push_back(static_cast<double>(k) * res.dt_used - opt.snapshot_times[i]);
    }
    res.snapshots.resize(opt.snapshot_times.size());
    auto emit = [&](long long step, const FieldState& s) {
        for (std::size_t i = 0; i < snap_step.size(); ++i)
            if (snap_step[i] == step) res.snapshots[i] = s;
    };

    if (opt.scheme == SchemeId::SpectralStrang) {
        StrangStepper stepper(grid, mass, res.dt_used, opt.alpha);
        FieldState s = state0;
        emit(0, s);
        for (long long k = 1; k <= res.steps; ++k) {
            stepper.step(s);
            s.t = state0.t + static_cast<double>(k) * res.dt_used;
            emit(k, s);
        }
    } else {
        ImplicitFdStepper stepper(grid, mass, res.dt_used, opt.fd_weight);
        emit(0, state0);
        std::vector<double> old = state0.u;
        std::vector<double> now = stepper.bootstrap(state0);
        // iteration k holds u^{k-1}, u^k and computes u^{k+1}; velocities come
        // from the central difference, so the loop runs one step past T.
        for (long long k = 1; k <= res.steps; ++k) {
            std::vector<double> next = stepper.advance(now, old);
            const bool wanted =
                std::find(snap_step.begin(), snap_step.end(), k) != snap_step.end();
            if (wanted) {
                FieldState s;
                s.t = state0.t + static_cast<double>(k) * res.dt_used;
                s.u = now;
                s.v.resize(now.size());
                for (std::size_t i = 0; i < now.size(); ++i)
                    s.v[i] = (next[i] - old[i]) / (2.0 * res.dt_used);
                emit(k, s);
            }
            old = std::move(now);
            now = std::move(next);
        }
    }
    return res;
}

} // namespace fkg
