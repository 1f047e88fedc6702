#pragma once

#include "horolab/sl2.hpp"

#include <array>
#include <cmath>

namespace horolab {

using Row2 = std::array<double, 2>;
using Basis2 = std::array<Row2, 2>;

inline double dot(const Row2& x, const Row2& y) { return x[0] * y[0] + x[1] * y[1]; }

/// Gauss-reduced basis: rows = U * original rows, U unimodular.
struct ReducedBasis {
    Basis2 rows;
    IntMatrix2 U;
};

ReducedBasis gauss_reduce(const Basis2& basis);

/*!
    Calls visit(m, n) for every integer pair with |((m, n) + eta) * basis| <= radius (Euclidean),
    each pair exactly once. Boundary candidates within a relative 1e-9 slack are also
    visited, so callers apply their own exact test.
*/
template <class Visit>
void for_each_lattice_point_in_disc(const Basis2& basis, const Row2& eta, double radius, Visit&& visit) {
    if (!(radius >= 0.0))
        return;
    const auto red = gauss_reduce(basis);
    const Row2& r1 = red.rows[0];
    const Row2& r2 = red.rows[1];
    // Coordinates of eta in the reduced basis: eta * U^-1.
    const long long det = red.U.det();
    const IntMatrix2 Ui{red.U.d * det, -red.U.b * det, -red.U.c * det, red.U.a * det};
    const double e1 = eta[0] * double(Ui.a) + eta[1] * double(Ui.c);
    const double e2 = eta[0] * double(Ui.b) + eta[1] * double(Ui.d);

    const double n1 = dot(r1, r1);
    const double mu = dot(r2, r1) / n1;
    const double area = std::abs(r1[0] * r2[1] - r1[1] * r2[0]);
    const double n2star = area * area / n1; // squared Gram-Schmidt length of r2
    const double r = radius * (1.0 + 1e-9) + 1e-300;
    const double rsq = r * r;

    const double jspan = r / std::sqrt(n2star);
    const long long jlo = static_cast<long long>(std::ceil(-jspan - e2));
    const long long jhi = static_cast<long long>(std::floor(jspan - e2));
    for (long long j = jlo; j <= jhi; ++j) {
        const double y = double(j) + e2;
        const double rem = rsq - y * y * n2star;
        if (rem < 0)
            continue;
        const double ispan = std::sqrt(rem / n1);
        const double centre = -e1 - mu * y;
        const long long ilo = static_cast<long long>(std::ceil(centre - ispan));
        const long long ihi = static_cast<long long>(std::floor(centre + ispan));
        for (long long i = ilo; i <= ihi; ++i) {
            // (m, n) = (i, j) U
            const long long m = i * red.U.a + j * red.U.c;
            const long long n = i * red.U.b + j * red.U.d;
            visit(m, n);
        }
    }
}

} // namespace horolab
