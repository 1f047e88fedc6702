#pragma once

#include "horolab/affine.hpp"
#include "horolab/autofns.hpp"
#include "horolab/majorant.hpp"
#include "horolab/quadrature.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace horolab {

/// Weight on the line with support (or numerical support) in [lo, hi].
struct LineWeight {
    std::function<double(double)> fn;
    double lo = -1.0, hi = 1.0;
    double integral = 0.0;
    std::string name;

    double operator()(double x) const { return (x < lo || x > hi) ? 0.0 : fn(x); }

    /// (1 - x^2)^6 on [-1, 1]
    static LineWeight bump();
    /// (1 + x^2)^-22, cut at |x| = 4 where it is below 1e-27
    static LineWeight decay();
    static LineWeight zero();
};

struct OrbitExperiment {
    PoincareTestFn f;
    LineWeight h = LineWeight::decay();
    TorusMatrix xi{Row2{0, 0}};
    Sl2Matrix M;
    std::vector<double> schedule;
    QuadratureOptions quad;
    MajorantParams majorant;
};

/// Throws DomainError unless the schedule is nonempty and strictly monotone and k matches.
void validate(const OrbitExperiment& exp);

/// int f(Gamma (1, xi) M u_x a_y) h(x) dx, initial panels of width y.
std::complex<double> horocycle_integral(const PoincareTestFn& f, const TorusMatrix& xi, const Sl2Matrix& M,
                                        double y, const LineWeight& h, const QuadratureOptions& quad);

std::complex<double> translate_integral(const OrbitExperiment& exp, double y);

struct EquidistError {
    std::complex<double> value;
    double error = 0.0;
    double bound = 0.0;
    double bound_tail = 0.0; ///< ||M||^13 times the truncation tail of delta_m
    double ratio = 0.0;
};

/// error = |translate_integral - mean int h|, bound = |M|^13 delta_m(y; xi).
EquidistError equidist_error(const OrbitExperiment& exp, double y);

/// (1/T) int f(Gamma (1, xi) u_x a_y) eta(x) h(x/T) dx; exp.M is not used.
std::complex<double> smeared_average(const OrbitExperiment& exp, double y, double T,
                                     const std::function<double(double)>& eta);
/// Same quantity as a sum of period windows, each with xi replaced by xi u_{jN}.
std::complex<double> smeared_average_windows(const OrbitExperiment& exp, double y, double T,
                                             const std::function<double(double)>& eta);

/// (1/T) int f(Gamma g u_t) h(t/T) dt; requires supp h in [-1, 1].
std::complex<double> long_orbit_average(const PoincareTestFn& f, const GroupElement& g, double T,
                                        const LineWeight& h, const QuadratureOptions& quad = {});
/// The same average written as a translate integral at y = 1/T through the reduction of M a_T.
std::complex<double> long_orbit_average_translate_form(const PoincareTestFn& f, const GroupElement& g, double T,
                                                       const LineWeight& h, const QuadratureOptions& quad = {});

/// Y(M a_T) / T
double y_g(const GroupElement& g, double T);

struct SplitData {
    double t = 0.0;
    long long j = 0;
    Sl2Matrix Mtilde;
    /// (a, b; c, d) = gamma^-1 M a_T
    Sl2Matrix reduced;
    IntMatrix2 gamma;
};

/// Throws DomainError at the pole cz + d = 0.
SplitData orbit_split(const GroupElement& g, double T, double z);

/// Fixed bump with integral 1 on [-1, 1].
double split_bump(double x);

/// (cs + d)^-2 int Phi((z - s) / (cs + d)^2) dz, by quadrature.
double partition_identity(double c, double d, double s);

/// The long-orbit average recomputed through the z-splitting: an outer z-integral of translate integrals.
std::complex<double> split_form_average(const PoincareTestFn& f, const GroupElement& g, double T,
                                        const LineWeight& h, const QuadratureOptions& quad = {});

struct HorocycleRow {
    double y = 0.0;
    double error = 0.0;
};

/// error(y) = |int f(M u_x a_y) h dx - mean int h| for a zero-frequency test function.
std::vector<HorocycleRow> horocycle_main_term(const PoincareTestFn& f, const Sl2Matrix& M, const LineWeight& h,
                                              std::span<const double> ys, const QuadratureOptions& quad = {});

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Least squares of log v against log x; throws DomainError on fewer than 3 points or nonpositive data.
DecayFit decay_fit(std::span<const std::pair<double, double>> points);

} // namespace horolab
