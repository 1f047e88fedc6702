#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>

namespace horolab {

/// Integer matrix (a, b; c, d). Used for SL(2,Z) elements and unimodular basis changes.
struct IntMatrix2 {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    /// Inverse of a determinant-one matrix.
    IntMatrix2 inverse() const { return {d, -b, -c, a}; }
    IntMatrix2 transpose() const { return {a, c, b, d}; }
    /// Entries reduced into [0, n).
    IntMatrix2 mod(long long n) const;

    static IntMatrix2 identity() { return {}; }
    static IntMatrix2 S() { return {0, -1, 1, 0}; }
    static IntMatrix2 u(long long n) { return {1, n, 0, 1}; }

    friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/*!
    Real 2x2 matrix of determinant one.

    Products and constructors renormalize by det^(-1/2) whenever the determinant
    drifts more than 1e-12 away from 1.
*/
struct Sl2Matrix {
    double a = 1, b = 0, c = 0, d = 1;

    /// Throws DomainError if ad - bc <= 0.
    static Sl2Matrix from_entries(double a, double b, double c, double d);
    static Sl2Matrix from_int(const IntMatrix2& m);

    static Sl2Matrix identity() { return {}; }
    static Sl2Matrix S() { return {0, -1, 1, 0}; }
    /// u_x = (1, x; 0, 1)
    static Sl2Matrix unipotent(double x) { return {1, x, 0, 1}; }
    /// a_y = diag(sqrt y, 1/sqrt y); throws DomainError if y <= 0.
    static Sl2Matrix diagonal(double y);
    /// rotation (cos, -sin; sin, cos)
    static Sl2Matrix rotation(double theta);

    double det() const { return a * d - b * c; }
    Sl2Matrix inverse() const { return {d, -b, -c, a}; }

    friend Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y);
};

Sl2Matrix operator*(const IntMatrix2& x, const Sl2Matrix& y);
Sl2Matrix operator*(const Sl2Matrix& x, const IntMatrix2& y);

struct IwasawaCoords {
    double u = 0, v = 1, theta = 0;
};

struct UvsCoords {
    double u = 1, v = 0, s = 0;
};

IwasawaCoords iwasawa_decompose(const Sl2Matrix& M);
/// u_u a_v k_theta; throws DomainError if v <= 0.
Sl2Matrix iwasawa_compose(const IwasawaCoords& c);

double frobenius_norm(const Sl2Matrix& M);
double frobenius_norm_sq(const Sl2Matrix& M);

/// (a tau + b) / (c tau + d); throws DomainError unless Im tau > 0.
std::complex<double> mobius(const Sl2Matrix& M, std::complex<double> tau);

struct Reduction {
    IntMatrix2 gamma;  ///< M = gamma * reduced
    Sl2Matrix reduced; ///< reduced(i) lies in the standard fundamental domain
};

Reduction reduce_fundamental(const Sl2Matrix& M);
double cuspidal_height(const Sl2Matrix& M);

/// [u, v, s] = (u, -v/r; v, u/r) u_s with r = u^2 + v^2.
Sl2Matrix uvs_compose(const UvsCoords& c);
UvsCoords uvs_decompose(const Sl2Matrix& M);

enum class LieField { X1, X2, X3 };

/// exp(t X) for the three standard fields.
Sl2Matrix lie_exp(LieField X, double t);

using ScalarField = std::function<double(const Sl2Matrix&)>;

/*!
    Left-invariant derivative along a word of fields, by nested central differences.
    word[0] is applied outermost: D(w, M) = d/dt D(w[1:], M exp(t X_{w[0]})).
    The empty word returns phi(M).
*/
double lie_derivative(const ScalarField& phi, std::span<const LieField> word, const Sl2Matrix& M,
                      double step = 1e-4);

/// Coefficients (du, dv, dtheta) of a field written as a derivation in Iwasawa coordinates.
std::array<double, 3> iwasawa_field_coefficients(LieField X, const IwasawaCoords& c);

/// X phi evaluated through the Iwasawa-coordinate expression, with coordinate partials by central differences.
double iwasawa_lie_derivative(const ScalarField& phi, LieField X, const Sl2Matrix& M,
                              double step = 1e-4);

} // namespace horolab
