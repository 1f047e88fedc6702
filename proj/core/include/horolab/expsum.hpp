#pragma once

#include "horolab/lattice2d.hpp"
#include "horolab/quadrature.hpp"
#include "horolab/sl2.hpp"

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace horolab {

/// The coset [R] = { T in SL(2,Z) : T = R mod N }.
struct CosetSpec {
    long long N = 1;
    IntMatrix2 R;
};

/// Reduces R mod N; throws DomainError unless det R = 1 mod N.
CosetSpec make_coset(long long N, const IntMatrix2& R);
inline bool in_coset(const CosetSpec& cs, const IntMatrix2& T) { return T.mod(cs.N) == cs.R; }

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s a + t b = g.
long long ext_gcd(long long a, long long b, long long& s, long long& t);

/*!
    Visits every T in [R] with |T M| <= rho (Frobenius), each exactly once.
    First rows are walked over the ellipse |t1 M| <= rho with a reduced basis, then each
    first row carries the one-parameter family of completions t2 + n t1.
*/
template <class Visit>
void for_each_coset_matrix(const CosetSpec& cs, double rho, const Sl2Matrix& M, Visit&& visit) {
    if (!(rho * rho >= 2.0 - 1e-12))
        return;
    const double rho2 = rho * rho;
    const long long N = cs.N;
    auto mod = [N](long long x) { const long long r = x % N; return r < 0 ? r + N : r; };
    const Basis2 basis{Row2{M.a, M.b}, Row2{M.c, M.d}};
    for_each_lattice_point_in_disc(basis, Row2{0, 0}, rho, [&](long long p, long long r) {
        if (p == 0 && r == 0)
            return;
        if (mod(p) != cs.R.a || mod(r) != cs.R.b)
            return;
        long long s, t;
        if (ext_gcd(p, r, s, t) != 1)
            return;
        // p s + r t = 1, so t2 = (-t, s) completes (p, r) to determinant one.
        const Row2 P{p * M.a + r * M.c, p * M.b + r * M.d};
        const double A = dot(P, P);
        if (A > rho2)
            return;
        const long long x0 = -t, y0 = s;
        const Row2 Q0{x0 * M.a + y0 * M.c, x0 * M.b + y0 * M.d};
        const double B = dot(Q0, P);
        const double C = dot(Q0, Q0) - (rho2 - A);
        const double disc = B * B - A * C;
        if (disc < -1e-9 * (B * B + 1.0))
            return;
        const double root = std::sqrt(std::max(disc, 0.0));
        const double slack = 1e-9 * (1.0 + std::abs(B) / A);
        const auto nlo = static_cast<long long>(std::ceil((-B - root) / A - slack));
        const auto nhi = static_cast<long long>(std::floor((-B + root) / A + slack));
        for (long long n = nlo; n <= nhi; ++n) {
            const long long c = x0 + n * p, d = y0 + n * r;
            if (mod(c) != cs.R.c || mod(d) != cs.R.d)
                continue;
            const IntMatrix2 T{p, r, c, d};
            const Row2 Qn{c * M.a + d * M.c, c * M.b + d * M.d};
            if (A + dot(Qn, Qn) <= rho2)
                visit(T);
        }
    });
}

std::vector<IntMatrix2> enumerate_coset_ball(const CosetSpec& cs, double rho,
                                             const Sl2Matrix& M = Sl2Matrix::identity());

using Vec4 = std::array<double, 4>;

struct WeightFn {
    enum class Kind { bump6_product, custom };
    Kind kind = Kind::bump6_product;
    /// support radius: supp w lies in [-B, B]^4
    double B = 1.0;
    std::function<double(const Vec4&)> custom;

    double operator()(const Vec4& x) const;
};

/// Sum over T = (a1, a2; a3, a4) in [R] with |a|_inf <= B X of e(alpha . a) w(a / X).
std::complex<double> weighted_expsum_lhs(const CosetSpec& cs, const Vec4& alpha, double X, const WeightFn& w);

/// X^2 sum over q <= X of tau(q) q^-3/2 (1 + X |q alpha|_Z / q)^-1.
double expsum_rhs(const Vec4& alpha, double X);

struct CancellationRow {
    double X = 0;
    std::complex<double> lhs;
    double rhs = 0;
    double ratio = 0;
};

std::vector<CancellationRow> cancellation_report(const CosetSpec& cs, const Vec4& alpha,
                                                 std::span<const double> Xs, const WeightFn& w, int jobs = 1);

/// A field on SL(2,R) supported in the Frobenius ball of the given radius.
struct SupportedField {
    std::function<std::complex<double>(const Sl2Matrix&)> fn;
    double radius = 2.0;
};

/*!
    F(x) = y w(x1 x4 - x2 x3) int phi([x1, x3, s]) h(y s - (x1 x2 + x3 x4)/(x1^2 + x3^2)) ds,
    with w the plateau cutoff. Returns 0 when (x1, x3) = 0.
*/
std::complex<double> midapproach_transform(const SupportedField& phi, const std::function<double(double)>& h,
                                           double y, const Vec4& x, const QuadratureOptions& opt = {});

} // namespace horolab
