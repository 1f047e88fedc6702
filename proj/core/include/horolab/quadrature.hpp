#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace horolab {

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_depth = 20;
    /// Width of the initial uniform panels; <= 0 means one panel.
    double panel_width = 0.0;
    int jobs = 1;
};

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t panels = 0;
};

using LineIntegrand = std::function<std::complex<double>(double)>;

/*!
    Composite adaptive Gauss-Kronrod (7/15) quadrature over [lo, hi].
    A piece is accepted once its error is within an equal share of max(abs_tol, rel_tol * L1) / 2
    or within rel_tol / 2 of its own L1 mass, so the accepted errors sum to at most the global
    tolerance. Bisection also stops when it no longer reduces an already tiny error (rounding floor).
    Panels are summed in index order. Throws NonConvergence when a panel runs out of depth
    and the summed error estimate exceeds the global tolerance.
*/
QuadratureResult integrate(const LineIntegrand& f, double lo, double hi,
                           const QuadratureOptions& opt = {});

} // namespace horolab
