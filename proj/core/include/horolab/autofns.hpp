#pragma once

#include "horolab/affine.hpp"
#include "horolab/sl2.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace horolab {

/// phi(M) = bump6((|M|^2 - 2) / (rho0^2 - 2)) (1 + lambda cos theta(M)); supported in |M| <= rho0.
struct BumpProfile {
    double rho0 = 2.0;
    double lambda = 0.0;

    double operator()(const Sl2Matrix& M) const;
    /// Integral against v^-2 du dv dtheta.
    double haar_integral() const;
};

/*!
    Poincare series over Gamma(N):
    f(Gamma (1, xi) M) = sum over T in Gamma(N) of phi(T M) e(tr(m0 tT^-1 t xi)).
*/
struct PoincareTestFn {
    long long N = 1;
    int k = 1;
    FrequencyMatrix m0{IntRow2{0, 0}};
    BumpProfile phi;
};

/// Throws DomainError on inconsistent k, N < 1 or rho0 <= sqrt 2.
void validate(const PoincareTestFn& f);

/// Largest number of Gamma(N) terms one evaluation may touch before ResourceGuard trips.
inline constexpr std::size_t max_orbit_terms = 1'000'000;

/// m tT^-1 for each row m of the frequency matrix.
FrequencyMatrix act_frequency(const FrequencyMatrix& m, const IntMatrix2& T);

std::complex<double> evaluate_f(const PoincareTestFn& f, const TorusMatrix& xi, const Sl2Matrix& M);
std::complex<double> evaluate_f(const PoincareTestFn& f, const GroupElement& g);

/// Points per torus dimension that make the trapezoid rule exact for this (M, m).
int exact_fourier_panels(const PoincareTestFn& f, const Sl2Matrix& M, const FrequencyMatrix& m);

/// Trapezoid rule on the torus with `panels` points per dimension (0 selects exact_fourier_panels).
std::complex<double> fourier_coefficient(const PoincareTestFn& f, const Sl2Matrix& M, const FrequencyMatrix& m,
                                         int panels = 0);
/// Sum of phi(T M) over T in Gamma(N) with m0 tT^-1 = m.
std::complex<double> fourier_coefficient_closed(const PoincareTestFn& f, const Sl2Matrix& M,
                                                const FrequencyMatrix& m);

/// f_R(M, v) = f(R^-1 M, v).
struct TwistedTestFn {
    PoincareTestFn f;
    IntMatrix2 R;

    std::complex<double> evaluate(const TorusMatrix& xi, const Sl2Matrix& M) const;
    std::complex<double> evaluate(const GroupElement& g) const;
    std::complex<double> fourier_coefficient(const Sl2Matrix& M, const FrequencyMatrix& m, int panels) const;
};

/// Throws DomainError unless det R = 1.
TwistedTestFn twist_fR(const PoincareTestFn& f, const IntMatrix2& R);

/// |SL(2, Z/N)| = N^3 prod over p | N of (1 - p^-2)
long long sl2_mod_order(long long N);
/// Integer lifts of every element of SL(2, Z/N), found by breadth-first search over words in S and u_1.
std::vector<IntMatrix2> sl2_mod_representatives(long long N);
/// Haar volume of Gamma(N) \ SL(2,R) for v^-2 du dv dtheta, theta in [0, 2 pi).
double covolume(long long N);

/// Mean of f over X: zero unless m0 = 0, else haar_integral / covolume.
std::complex<double> mean_value(const PoincareTestFn& f);

struct HaarSample {
    Sl2Matrix M;
    TorusMatrix xi;
};

/// Point of Gamma \ G drawn from the normalized Haar measure, a pure function of (seed, index).
HaarSample haar_sample(const PoincareTestFn& f, std::uint64_t seed, std::uint64_t index);

struct MonteCarloMean {
    std::complex<double> mean;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

MonteCarloMean monte_carlo_mean(const PoincareTestFn& f, std::size_t samples, std::uint64_t seed, int jobs = 1);

struct OrbitClass {
    enum class Tag { zero, A, B };
    Tag tag = Tag::zero;
    FrequencyMatrix canonical;
    /// m gamma = canonical
    IntMatrix2 gamma;
};

/// Canonical representative of m under the right action of SL(2,Z).
OrbitClass classify_orbit(const FrequencyMatrix& m);

} // namespace horolab
