#include "horolab/sl2.hpp"

#include "horolab/errors.hpp"

#include <cmath>
#include <numbers>

namespace horolab {

namespace {

Sl2Matrix renormalized(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0))
        throw DomainError("matrix determinant is not positive");
    if (std::abs(det - 1.0) > 1e-12) {
        const double s = 1.0 / std::sqrt(det);
        a *= s;
        b *= s;
        c *= s;
        d *= s;
    }
    return {a, b, c, d};
}

long long floor_mod(long long x, long long n) {
    long long r = x % n;
    return r < 0 ? r + n : r;
}

} // namespace

IntMatrix2 IntMatrix2::mod(long long n) const {
    return {floor_mod(a, n), floor_mod(b, n), floor_mod(c, n), floor_mod(d, n)};
}

Sl2Matrix Sl2Matrix::from_entries(double a, double b, double c, double d) {
    return renormalized(a, b, c, d);
}

Sl2Matrix Sl2Matrix::from_int(const IntMatrix2& m) {
    if (m.det() != 1)
        throw DomainError("integer matrix does not have determinant 1");
    return {double(m.a), double(m.b), double(m.c), double(m.d)};
}

Sl2Matrix Sl2Matrix::diagonal(double y) {
    if (!(y > 0.0))
        throw DomainError("a_y requires y > 0");
    const double s = std::sqrt(y);
    return {s, 0, 0, 1.0 / s};
}

Sl2Matrix Sl2Matrix::rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
}

Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y) {
    return renormalized(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                        x.c * y.b + x.d * y.d);
}

Sl2Matrix operator*(const IntMatrix2& x, const Sl2Matrix& y) {
    return Sl2Matrix::from_int(x) * y;
}

Sl2Matrix operator*(const Sl2Matrix& x, const IntMatrix2& y) {
    return x * Sl2Matrix::from_int(y);
}

IwasawaCoords iwasawa_decompose(const Sl2Matrix& M) {
    const double r = M.c * M.c + M.d * M.d;
    double theta = std::atan2(M.c, M.d);
    if (theta < 0)
        theta += 2 * std::numbers::pi;
    if (theta >= 2 * std::numbers::pi)
        theta = 0.0;
    return {(M.a * M.c + M.b * M.d) / r, 1.0 / r, theta};
}

Sl2Matrix iwasawa_compose(const IwasawaCoords& c) {
    if (!(c.v > 0.0))
        throw DomainError("Iwasawa coordinate v must be positive");
    const double sv = std::sqrt(c.v);
    const double cs = std::cos(c.theta), sn = std::sin(c.theta);
    return renormalized(sv * cs + c.u * sn / sv, -sv * sn + c.u * cs / sv, sn / sv, cs / sv);
}

double frobenius_norm_sq(const Sl2Matrix& M) {
    return M.a * M.a + M.b * M.b + M.c * M.c + M.d * M.d;
}

double frobenius_norm(const Sl2Matrix& M) { return std::sqrt(frobenius_norm_sq(M)); }

std::complex<double> mobius(const Sl2Matrix& M, std::complex<double> tau) {
    if (!(tau.imag() > 0.0))
        throw DomainError("mobius requires Im tau > 0");
    return (M.a * tau + M.b) / (M.c * tau + M.d);
}

Reduction reduce_fundamental(const Sl2Matrix& M) {
    // W accumulates the applied moves, so that W M is reduced and gamma = W^-1.
    IntMatrix2 W;
    Sl2Matrix cur = M;
    constexpr double eps = 1e-13;
    for (int iter = 0; iter < 100000; ++iter) {
        const double r = cur.c * cur.c + cur.d * cur.d;
        const double re = (cur.a * cur.c + cur.b * cur.d) / r;
        const double abs2 = (cur.a * cur.a + cur.b * cur.b) / r;
        const double n = std::floor(re + 0.5);
        if (n != 0.0) {
            const auto shift = IntMatrix2::u(-static_cast<long long>(n));
            W = shift * W;
            cur = W * M;
            continue;
        }
        if (abs2 < 1.0 - eps || (abs2 <= 1.0 + eps && re > eps)) {
            W = IntMatrix2::S() * W;
            cur = W * M;
            continue;
        }
        return {W.inverse(), cur};
    }
    throw NonConvergence("fundamental-domain reduction did not terminate", 0.0, 0.0);
}

double cuspidal_height(const Sl2Matrix& M) {
    const auto red = reduce_fundamental(M);
    return 1.0 / (red.reduced.c * red.reduced.c + red.reduced.d * red.reduced.d);
}

Sl2Matrix uvs_compose(const UvsCoords& c) {
    const double r = c.u * c.u + c.v * c.v;
    if (!(r > 0.0))
        throw DomainError("[u,v,s] requires (u,v) != 0");
    return renormalized(c.u, c.u * c.s - c.v / r, c.v, c.v * c.s + c.u / r);
}

UvsCoords uvs_decompose(const Sl2Matrix& M) {
    return {M.a, M.c, (M.a * M.b + M.c * M.d) / (M.a * M.a + M.c * M.c)};
}

Sl2Matrix lie_exp(LieField X, double t) {
    switch (X) {
    case LieField::X1:
        return {1, t, 0, 1};
    case LieField::X2:
        return {1, 0, t, 1};
    case LieField::X3:
        return {std::exp(t), 0, 0, std::exp(-t)};
    }
    return {};
}

double lie_derivative(const ScalarField& phi, std::span<const LieField> word, const Sl2Matrix& M,
                      double step) {
    if (word.empty())
        return phi(M);
    if (!(step > 0.0) || step > 1e-3)
        throw DomainError("lie_derivative step must lie in (0, 1e-3]");
    const auto rest = word.subspan(1);
    const double plus = lie_derivative(phi, rest, M * lie_exp(word[0], step), step);
    const double minus = lie_derivative(phi, rest, M * lie_exp(word[0], -step), step);
    return (plus - minus) / (2 * step);
}

std::array<double, 3> iwasawa_field_coefficients(LieField X, const IwasawaCoords& c) {
    const double c2 = std::cos(2 * c.theta), s2 = std::sin(2 * c.theta);
    const double s = std::sin(c.theta), co = std::cos(c.theta);
    switch (X) {
    case LieField::X1:
        return {c2 * c.v, -s2 * c.v, -s * s};
    case LieField::X2:
        return {c2 * c.v, -s2 * c.v, co * co};
    case LieField::X3:
        return {2 * s2 * c.v, 2 * c2 * c.v, s2};
    }
    return {0, 0, 0};
}

double iwasawa_lie_derivative(const ScalarField& phi, LieField X, const Sl2Matrix& M, double step) {
    const auto c = iwasawa_decompose(M);
    const auto coef = iwasawa_field_coefficients(X, c);
    auto at = [&](double du, double dv, double dth) {
        return phi(iwasawa_compose({c.u + du, c.v + dv, c.theta + dth}));
    };
    const double hv = step * c.v;
    const double pu = (at(step, 0, 0) - at(-step, 0, 0)) / (2 * step);
    const double pv = (at(0, hv, 0) - at(0, -hv, 0)) / (2 * hv);
    const double pt = (at(0, 0, step) - at(0, 0, -step)) / (2 * step);
    return coef[0] * pu + coef[1] * pv + coef[2] * pt;
}

} // namespace horolab
