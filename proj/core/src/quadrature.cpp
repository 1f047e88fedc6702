#include "horolab/quadrature.hpp"

#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace horolab {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Piece {
    std::complex<double> value;
    double error = 0, l1 = 0;
    bool exhausted = false;
};

Piece rule(const LineIntegrand& f, double a, double b) {
    Piece p;
    p.value = GK::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
    // Boost reports the non-adaptive error on the reference interval [-1, 1].
    p.error *= 0.5 * (b - a);
    return p;
}

/// Bisects until the error meets tol or half of rel_tol relative to the piece's own L1 mass, the depth runs
/// out, or splitting stops paying off (rounding floor).
Piece refine(const LineIntegrand& f, double a, double b, const Piece& whole, double tol, double rel, int depth) {
    if (whole.error <= tol || whole.error <= rel * whole.l1)
        return whole;
    if (depth == 0) {
        Piece p = whole;
        p.exhausted = true;
        return p;
    }
    const double m = 0.5 * (a + b);
    const Piece left = rule(f, a, m), right = rule(f, m, b);
    if (left.error + right.error >= 0.9 * whole.error && whole.error <= 1e-6 * whole.l1)
        return {left.value + right.value, left.error + right.error, left.l1 + right.l1, false};
    const Piece l = refine(f, a, m, left, 0.5 * tol, rel, depth - 1);
    const Piece r = refine(f, m, b, right, 0.5 * tol, rel, depth - 1);
    return {l.value + r.value, l.error + r.error, l.l1 + r.l1, l.exhausted || r.exhausted};
}

} // namespace

QuadratureResult integrate(const LineIntegrand& f, double lo, double hi, const QuadratureOptions& opt) {
    QuadratureResult out;
    if (hi == lo)
        return out;
    if (!(hi > lo))
        throw DomainError("integrate requires lo <= hi");
    std::size_t n = 1;
    if (opt.panel_width > 0.0)
        n = static_cast<std::size_t>(std::ceil((hi - lo) / opt.panel_width));
    n = std::max<std::size_t>(n, 1);
    const double width = (hi - lo) / double(n);
    auto bounds = [&](std::size_t i) {
        const double a = lo + width * double(i);
        const double b = (i + 1 == n) ? hi : lo + width * double(i + 1);
        return std::pair{a, b};
    };

    std::vector<Piece> panels(n);
    parallel_for(n, opt.jobs, [&](std::size_t i) {
        const auto [a, b] = bounds(i);
        panels[i] = rule(f, a, b);
    });
    // Half the global error budget is shared equally between panels; the other half is spent in proportion to L1 mass.
    CompensatedSum l1_first;
    for (const auto& p : panels)
        l1_first += p.l1;
    const double budget = 0.5 * std::max(opt.abs_tol, opt.rel_tol * l1_first.value()) / double(n);
    parallel_for(n, opt.jobs, [&](std::size_t i) {
        const auto [a, b] = bounds(i);
        panels[i] = refine(f, a, b, panels[i], budget, 0.5 * opt.rel_tol, opt.max_depth);
    });

    CompensatedComplexSum sum;
    CompensatedSum err, l1;
    bool exhausted = false;
    for (const auto& p : panels) {
        sum += p.value;
        err += p.error;
        l1 += p.l1;
        exhausted = exhausted || p.exhausted;
    }
    out.value = sum.value();
    out.error = err.value();
    out.l1 = l1.value();
    out.panels = n;
    if (exhausted && out.error > std::max(opt.abs_tol, opt.rel_tol * out.l1))
        throw NonConvergence("quadrature reached max depth without meeting tolerance", out.value.real(), out.error);
    return out;
}

} // namespace horolab
