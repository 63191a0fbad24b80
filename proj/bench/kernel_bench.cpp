// Times the OpenMP kernels against their serial reference implementations on
// production-sized arrays. Build and run:
//   cmake --build build --target fkg_bench && ./build/bench/fkg_bench [n] [reps]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fkg/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double checksum = 0.0;   // defeats dead-code elimination

template <class F>
double time_ms(int reps, F&& body) {
    body();   // warm up
    const auto start = clock_type::now();
    for (int r = 0; r < reps; ++r) checksum += body();
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void row(const char* name, double ref_ms, double omp_ms) {
    std::printf("%-22s %10.4f %10.4f %8.2fx\n", name, ref_ms, omp_ms,
                ref_ms / omp_ms);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1u << 20;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 50;

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(n), m(n), v(n), out(n), tab_c(n), tab_s(n), tab_w(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = dist(rng);
        m[i] = std::abs(dist(rng));
        v[i] = dist(rng);
        tab_c[i] = std::cos(0.01 * i);
        tab_s[i] = std::sin(0.01 * i);
        tab_w[i] = 0.5 * tab_s[i];
    }
    std::vector<std::complex<double>> uh(n), vh(n);
    for (std::size_t i = 0; i < n; ++i) {
        uh[i] = {u[i], m[i]};
        vh[i] = {v[i], u[i]};
    }
    std::vector<double> kernel(101);
    for (std::size_t i = 0; i < kernel.size(); ++i) kernel[i] = 1.0 / (1.0 + i);

#ifdef _OPENMP
    std::printf("n = %zu, reps = %d, omp threads = %d\n\n", n, reps,
                omp_get_max_threads());
#else
    std::printf("n = %zu, reps = %d, OpenMP disabled\n\n", n, reps);
#endif
    std::printf("%-22s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

    namespace k = fkg::kernels;

    row("sum_squares",
        time_ms(reps, [&] { return k::ref::sum_squares(u); }),
        time_ms(reps, [&] { return k::sum_squares(u); }));

    row("weighted_square_sum",
        time_ms(reps, [&] { return k::ref::weighted_square_sum(m, u); }),
        time_ms(reps, [&] { return k::weighted_square_sum(m, u); }));

    row("mass_kick",
        time_ms(reps, [&] { k::ref::mass_kick(u, m, 1e-3, v); return v[0]; }),
        time_ms(reps, [&] { k::mass_kick(u, m, 1e-3, v); return v[0]; }));

    row("propagator_combine",
        time_ms(reps,
                [&] {
                    k::ref::propagator_combine(uh, vh, tab_c, tab_s, tab_w);
                    return uh[0].real();
                }),
        time_ms(reps, [&] {
            k::propagator_combine(uh, vh, tab_c, tab_s, tab_w);
            return uh[0].real();
        }));

    row("second_difference",
        time_ms(reps, [&] { k::ref::second_difference(u, 1e4, out); return out[0]; }),
        time_ms(reps, [&] { k::second_difference(u, 1e4, out); return out[0]; }));

    row("convolution(101)",
        time_ms(reps / 5 + 1,
                [&] {
                    k::ref::periodic_convolution(u, kernel, out);
                    return out[0];
                }),
        time_ms(reps / 5 + 1, [&] {
            k::periodic_convolution(u, kernel, out);
            return out[0];
        }));

    std::printf("\n(checksum %g)\n", checksum);
    return 0;
}
