#include "fkg/mass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fkg/kernels.hpp"

namespace fkg {

namespace {

double bump_raw(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_bump() {
    const double fa = bump_raw(-1.0);
    const double fm = bump_raw(0.0);
    const double fb = bump_raw(1.0);
    const double whole = 2.0 / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(&bump_raw, -1.0, 1.0, fa, fm, fb, whole, 1e-13, 40);
}

} // namespace

double mollifier_constant() {
    static const double c = 1.0 / integrate_bump();
    return c;
}

double mollifier(double x) { return mollifier_constant() * bump_raw(x); }

std::string MassSpec::name() const {
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Delta: return "delta";
        case Kind::DeltaSquared: return "delta_squared";
        case Kind::Bounded: return "bounded";
    }
    return "?";
}

void MassSpec::validate(const Grid1D& grid) const {
    if (kind == Kind::Delta || kind == Kind::DeltaSquared) {
        if (!(x0 > 0.0 && x0 < grid.length))
            throw std::invalid_argument("MassSpec: center " + std::to_string(x0) +
                                        " is not strictly inside [0, " +
                                        std::to_string(grid.length) + ")");
    }
    if (kind == Kind::Bounded) {
        if (static_cast<int>(table.size()) != grid.n)
            throw std::invalid_argument("MassSpec: bounded table has " +
                                        std::to_string(table.size()) + " samples, grid has " +
                                        std::to_string(grid.n));
        for (double v : table)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(
                    "MassSpec: bounded table must be finite and non-negative");
    }
}

RegularizedMass regularize(const MassSpec& spec, double eps, const Grid1D& grid) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("regularize: eps must lie in (0, 1], got " +
                                    std::to_string(eps));
    spec.validate(grid);
    if (eps < 5.0 * grid.dx && spec.kind != MassSpec::Kind::Zero)
        std::fprintf(stderr,
                     "[fkg] warning: eps=%g is below 5*dx=%g; mollifier under-resolved\n",
                     eps, 5.0 * grid.dx);

    RegularizedMass out;
    out.eps = eps;
    out.samples.assign(static_cast<std::size_t>(grid.n), 0.0);

    switch (spec.kind) {
        case MassSpec::Kind::Zero:
            break;
        case MassSpec::Kind::Delta:
        case MassSpec::Kind::DeltaSquared: {
            if (spec.x0 - eps <= 0.0 || spec.x0 + eps >= grid.length)
                throw std::invalid_argument(
                    "regularize: mollified center within eps of the boundary "
                    "(support would wrap)");
            for (int i = 0; i < grid.n; ++i) {
                const double s =
                    mollifier((grid.x[static_cast<std::size_t>(i)] - spec.x0) / eps) / eps;
                out.samples[static_cast<std::size_t>(i)] =
                    (spec.kind == MassSpec::Kind::Delta) ? s : s * s;
            }
            break;
        }
        case MassSpec::Kind::Bounded: {
            const int radius = static_cast<int>(std::ceil(eps / grid.dx));
            std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
            double total = 0.0;
            for (int j = -radius; j <= radius; ++j) {
                const double w = mollifier(j * grid.dx / eps) / eps * grid.dx;
                kernel[static_cast<std::size_t>(j + radius)] = w;
                total += w;
            }
            for (double& w : kernel) w /= total;
            kernels::periodic_convolution(spec.table, kernel, out.samples);
            for (double& v : out.samples) v = std::max(v, 0.0);
            break;
        }
    }
    out.sup_norm = kernels::max_abs(out.samples);
    return out;
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog: need >= 2 matching points");
    const std::size_t m = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog: points must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    LogLogFit fit;
    fit.exponent = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.exponent * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(y[i]) - (fit.exponent * std::log(x[i]) + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

ModeratenessReport moderateness_exponent(const MassSpec& spec,
                                         std::span<const double> eps_list,
                                         const Grid1D& grid) {
    if (eps_list.size() < 3)
        throw std::invalid_argument("moderateness_exponent: need at least 3 eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument(
                "moderateness_exponent: eps values must be strictly decreasing");

    ModeratenessReport report;
    report.eps.assign(eps_list.begin(), eps_list.end());
    std::vector<double> inv_eps;
    for (double e : eps_list) {
        report.sup_norms.push_back(regularize(spec, e, grid).sup_norm);
        inv_eps.push_back(1.0 / e);
    }
    const bool all_zero =
        std::all_of(report.sup_norms.begin(), report.sup_norms.end(),
                    [](double s) { return s == 0.0; });
    if (!all_zero) {
        const LogLogFit fit = fit_loglog(inv_eps, report.sup_norms);
        report.exponent = fit.exponent;
        report.residual = fit.residual;
    }
    if (report.exponent < -0.1)
        throw std::runtime_error("moderateness_exponent: net shrinks (N = " +
                                 std::to_string(report.exponent) +
                                 "), not a regularization net");
    return report;
}

RegularizedMass perturb_negligible(const RegularizedMass& base) {
    RegularizedMass out = base;
    const double factor = 1.0 + std::exp(-1.0 / base.eps);
    for (double& v : out.samples) v *= factor;
    out.sup_norm = base.sup_norm * factor;
    return out;
}

RegularizedMass perturb_power(const RegularizedMass& base, double p, double scale,
                              const Grid1D& grid) {
    if (!(p > 0.0))
        throw std::invalid_argument("perturb_power: order p must be positive, got " +
                                    std::to_string(p));
    RegularizedMass out = base;
    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(base.samples.begin(), base.samples.end()) - base.samples.begin());
    const double center = grid.x[peak];
    const double height = std::pow(base.eps, p) * scale;
    const double peak_value = mollifier(0.0);
    for (int i = 0; i < grid.n; ++i) {
        double d = std::abs(grid.x[static_cast<std::size_t>(i)] - center);
        d = std::min(d, grid.length - d);
        out.samples[static_cast<std::size_t>(i)] += height * mollifier(d) / peak_value;
    }
    out.sup_norm = kernels::max_abs(out.samples);
    return out;
}

} // namespace fkg
