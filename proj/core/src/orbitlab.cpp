#include "horolab/orbitlab.hpp"

#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"
#include "horolab/profiles.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace horolab {

LineWeight LineWeight::bump() { return {[](double x) { return bump6(x); }, -1.0, 1.0, bump6_integral, "bump6"}; }

LineWeight LineWeight::decay() {
    const double integral = std::sqrt(std::numbers::pi) * boost::math::tgamma_ratio(21.5, 22.0);
    return {[](double x) { return std::pow(1.0 + x * x, -22.0); }, -4.0, 4.0, integral, "decay22"};
}

LineWeight LineWeight::zero() { return {[](double) { return 0.0; }, -1.0, 1.0, 0.0, "zero"}; }

void validate(const OrbitExperiment& exp) {
    validate(exp.f);
    if (exp.xi.size() != std::size_t(exp.f.k))
        throw DomainError("xi must have k rows");
    if (exp.schedule.empty())
        throw DomainError("schedule must be nonempty");
    const bool up = exp.schedule.size() < 2 || exp.schedule[1] > exp.schedule[0];
    for (std::size_t i = 1; i < exp.schedule.size(); ++i)
        if ((exp.schedule[i] > exp.schedule[i - 1]) != up || exp.schedule[i] == exp.schedule[i - 1])
            throw DomainError("schedule must be strictly monotone");
}

std::complex<double> horocycle_integral(const PoincareTestFn& f, const TorusMatrix& xi, const Sl2Matrix& M,
                                        double y, const LineWeight& h, const QuadratureOptions& quad) {
    if (!(y > 0.0 && y <= 1.0))
        throw DomainError("translate integral requires 0 < y <= 1");
    if (h.integral == 0.0 && h.name == "zero")
        return 0.0;
    const Sl2Matrix ay = Sl2Matrix::diagonal(y);
    auto integrand = [&](double x) -> std::complex<double> {
        const double w = h(x);
        if (w == 0.0)
            return 0.0;
        return evaluate_f(f, xi, M * Sl2Matrix::unipotent(x) * ay) * w;
    };
    QuadratureOptions o = quad;
    if (o.panel_width <= 0.0)
        o.panel_width = y;
    return integrate(integrand, h.lo, h.hi, o).value;
}

std::complex<double> translate_integral(const OrbitExperiment& exp, double y) {
    return horocycle_integral(exp.f, exp.xi, exp.M, y, exp.h, exp.quad);
}

EquidistError equidist_error(const OrbitExperiment& exp, double y) {
    EquidistError out;
    out.value = translate_integral(exp, y);
    out.error = std::abs(out.value - mean_value(exp.f) * exp.h.integral);
    MajorantParams p = exp.majorant;
    p.k = exp.f.k;
    const double scale = std::pow(frobenius_norm(exp.M), 13);
    const auto d = delta_m(p, y, exp.xi);
    out.bound = scale * d.value;
    out.bound_tail = scale * d.tail_bound;
    out.ratio = out.error / out.bound;
    return out;
}

std::complex<double> smeared_average(const OrbitExperiment& exp, double y, double T,
                                     const std::function<double(double)>& eta) {
    if (!(T >= 1.0))
        throw DomainError("smeared_average requires T >= 1");
    LineWeight stretched{[&](double x) { return eta(x) * exp.h(x / T); }, T * exp.h.lo, T * exp.h.hi, 1.0,
                         "stretched"};
    return horocycle_integral(exp.f, exp.xi, Sl2Matrix::identity(), y, stretched, exp.quad) / T;
}

std::complex<double> smeared_average_windows(const OrbitExperiment& exp, double y, double T,
                                             const std::function<double(double)>& eta) {
    if (!(T >= 1.0))
        throw DomainError("smeared_average requires T >= 1");
    const double N = double(exp.f.N);
    const auto jlo = static_cast<long long>(std::floor((T * exp.h.lo - N) / N));
    const auto jhi = static_cast<long long>(std::ceil((T * exp.h.hi + N) / N));
    CompensatedComplexSum sum;
    for (long long j = jlo; j <= jhi; ++j) {
        const double shift = double(j) * N;
        LineWeight window{[&, shift](double x) {
                              return partition_weight(x, N) * eta(x + shift) * exp.h((x + shift) / T);
                          },
                          -N, N, 1.0, "window"};
        TorusMatrix xij = exp.xi * Sl2Matrix::unipotent(shift);
        sum += horocycle_integral(exp.f, xij, Sl2Matrix::identity(), y, window, exp.quad);
    }
    return sum.value() / T;
}

std::complex<double> long_orbit_average(const PoincareTestFn& f, const GroupElement& g, double T,
                                        const LineWeight& h, const QuadratureOptions& quad) {
    if (!(T >= 1.0))
        throw DomainError("long_orbit_average requires T >= 1");
    if (h.lo < -1.0 || h.hi > 1.0)
        throw DomainError("long_orbit_average requires supp h in [-1, 1]");
    if (h.name == "zero")
        return 0.0;
    const TorusMatrix xi = g.xi();
    auto integrand = [&](double s) -> std::complex<double> {
        const double w = h(s);
        if (w == 0.0)
            return 0.0;
        return evaluate_f(f, xi, g.M * Sl2Matrix::unipotent(T * s)) * w;
    };
    QuadratureOptions o = quad;
    if (o.panel_width <= 0.0)
        o.panel_width = 1.0 / T;
    return integrate(integrand, h.lo, h.hi, o).value;
}

std::complex<double> long_orbit_average_translate_form(const PoincareTestFn& f, const GroupElement& g, double T,
                                                       const LineWeight& h, const QuadratureOptions& quad) {
    if (!(T >= 1.0))
        throw DomainError("long_orbit_average requires T >= 1");
    const auto red = reduce_fundamental(g.M * Sl2Matrix::diagonal(T));
    const TorusMatrix xig = g.xi() * Sl2Matrix::from_int(red.gamma);
    return horocycle_integral(f, xig, red.reduced, 1.0 / T, h, quad);
}

double y_g(const GroupElement& g, double T) {
    if (!(T >= 1.0))
        throw DomainError("y_g requires T >= 1");
    return cuspidal_height(g.M * Sl2Matrix::diagonal(T)) / T;
}

SplitData orbit_split(const GroupElement& g, double T, double z) {
    if (!(T >= 1.0))
        throw DomainError("orbit_split requires T >= 1");
    const auto red = reduce_fundamental(g.M * Sl2Matrix::diagonal(T));
    const auto& [a, b, c, d] = red.reduced;
    const double den = c * z + d;
    if (den == 0.0)
        throw DomainError("orbit_split: z is the pole -d/c");
    const double t = 1.0 / (den * den);
    const double q = (a * z + b) / den;
    const double nearest = std::round(q);
    // A quotient within rounding of an integer counts as that integer.
    const double jq = std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q)) ? nearest : std::floor(q);
    const auto j = static_cast<long long>(jq);
    const double st = std::sqrt(t);
    SplitData out;
    out.t = t;
    out.j = j;
    out.reduced = red.reduced;
    out.gamma = red.gamma;
    out.Mtilde = Sl2Matrix::from_entries((a - jq * c) / st, (a * z + b - jq * den) * st, c / st, den * st);
    return out;
}

double split_bump(double x) { return bump6(x) / bump6_integral; }

double partition_identity(double c, double d, double s) {
    const double den = c * s + d;
    if (den == 0.0)
        throw DomainError("partition_identity: cs + d = 0");
    const double w = den * den;
    QuadratureOptions o;
    o.rel_tol = 1e-12;
    const auto r = integrate([&](double z) -> std::complex<double> { return split_bump((z - s) / w); }, s - w,
                             s + w, o);
    return r.value.real() / w;
}

std::complex<double> split_form_average(const PoincareTestFn& f, const GroupElement& g, double T,
                                        const LineWeight& h, const QuadratureOptions& quad) {
    if (h.lo < -1.0 || h.hi > 1.0)
        throw DomainError("split_form_average requires supp h in [-1, 1]");
    const auto red = reduce_fundamental(g.M * Sl2Matrix::diagonal(T));
    const double c = red.reduced.c, d = red.reduced.d;
    const double wmax = (std::abs(c) + std::abs(d)) * (std::abs(c) + std::abs(d));
    const TorusMatrix xig = g.xi() * Sl2Matrix::from_int(red.gamma);

    auto inner = [&](double z) -> std::complex<double> {
        if (c * z + d == 0.0)
            return 0.0;
        const SplitData sp = orbit_split(g, T, z);
        const double t = sp.t;
        // s = z + x / t ranges over supp h intersected with |z - s| <= (cs + d)^2.
        const double slo = std::max(h.lo, z - wmax), shi = std::min(h.hi, z + wmax);
        if (slo >= shi)
            return 0.0;
        LineWeight ht{[&, z, t](double x) {
                          const double s = z + x / t;
                          const double den = c * s + d;
                          if (den == 0.0)
                              return 0.0;
                          return h(s) * split_bump((z - s) / (den * den)) / (den * den);
                      },
                      t * (slo - z), t * (shi - z), 1.0, "split"};
        const TorusMatrix xij = xig * Sl2Matrix::unipotent(double(sp.j));
        QuadratureOptions qi = quad;
        qi.jobs = 1;
        qi.panel_width = 0.0;
        const double y = t / T;
        if (y > 1.0 + 1e-12)
            throw DomainError("split_form_average: t exceeds T");
        return horocycle_integral(f, xij, sp.Mtilde, std::min(y, 1.0), ht, qi) / t;
    };
    QuadratureOptions qo = quad;
    qo.panel_width = 4.0 / T;
    return integrate(inner, h.lo - wmax, h.hi + wmax, qo).value;
}

std::vector<HorocycleRow> horocycle_main_term(const PoincareTestFn& f, const Sl2Matrix& M, const LineWeight& h,
                                              std::span<const double> ys, const QuadratureOptions& quad) {
    validate(f);
    for (const auto& r : f.m0)
        if (r[0] != 0 || r[1] != 0)
            throw DomainError("horocycle_main_term requires m0 = 0");
    const auto mean = mean_value(f) * h.integral;
    const TorusMatrix xi(f.k, Row2{0, 0});
    std::vector<HorocycleRow> rows;
    for (double y : ys)
        rows.push_back({y, std::abs(horocycle_integral(f, xi, M, y, h, quad) - mean)});
    return rows;
}

DecayFit decay_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw DomainError("decay_fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, v] : points) {
        if (!(x > 0.0 && v > 0.0))
            throw DomainError("decay_fit needs positive data");
        const double lx = std::log(x), lv = std::log(v);
        sx += lx;
        sy += lv;
        sxx += lx * lx;
        sxy += lx * lv;
    }
    const double n = double(points.size());
    DecayFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0;
    for (const auto& [x, v] : points) {
        const double r = std::log(v) - fit.intercept - fit.slope * std::log(x);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss);
    return fit;
}

} // namespace horolab
