#pragma once

#include "horolab/lattice2d.hpp"
#include "horolab/sl2.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace horolab {

/// k x 2 real matrix, one row per torus factor.
using TorusMatrix = std::vector<Row2>;
using IntRow2 = std::array<long long, 2>;
/// k x 2 integer matrix.
using FrequencyMatrix = std::vector<IntRow2>;
using IntVector = std::vector<long long>;

inline Row2 operator*(const Row2& r, const Sl2Matrix& M) {
    return {r[0] * M.a + r[1] * M.c, r[0] * M.b + r[1] * M.d};
}

TorusMatrix operator*(const TorusMatrix& xi, const Sl2Matrix& M);

/// q xi, the 1 x 2 combination of the rows of xi.
Row2 combine_rows(const IntVector& q, const TorusMatrix& xi);

/// Element (M, v) of SL(2,R) x| (R^2)^k with v a k x 2 matrix.
struct GroupElement {
    Sl2Matrix M;
    TorusMatrix v;

    std::size_t k() const { return v.size(); }

    static GroupElement identity(std::size_t k) { return {Sl2Matrix::identity(), TorusMatrix(k, Row2{0, 0})}; }
    /// (1, xi) M = (M, xi M)
    static GroupElement from_xi(const TorusMatrix& xi, const Sl2Matrix& M) { return {M, xi * M}; }
    /// xi with g = (1, xi) M
    TorusMatrix xi() const { return v * M.inverse(); }
};

/// (M, v)(M', v') = (M M', v M' + v'); throws DomainError on k mismatch.
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
/// p_q(M, v) = (M, q v), a k = 1 element.
GroupElement project_pq(const GroupElement& g, const IntVector& q);

/// Translate of a lattice: { (z + offset_coeff) basis : z in Z^2 } stored as basis + offset.
struct PlanarGrid {
    Basis2 basis;
    Row2 offset;

    /// (w - offset) basis^-1 in Z^2 within tol.
    bool contains(const Row2& w, double tol = 1e-9) const;
};

/// The grid Z^2 p_q(g) = (Z^2 + q xi) M.
PlanarGrid grid_of(const GroupElement& g, const IntVector& q);

/// The rectangle [-1/T, 1/T] x [-1, 1].
struct RectangleRT {
    double T = 1.0;
    bool contains(const Row2& w, double scale = 1.0) const;
};

struct GapResult {
    double value = 0.0;
    /// Integer coefficients (m, n) of the minimizing grid point (m, n) + q xi.
    IntRow2 coeffs{0, 0};
    Row2 point{0, 0};
    bool capped = false;
};

/// The sup-norm gap value of one grid point at scale T: max(T |w1|, |w2|) for w = ((m,n) + eta) M.
double gap_of_point(long long m, long long n, const Row2& eta, const Sl2Matrix& M, double T);

GapResult s_gq_detail(const GroupElement& g, const IntVector& q, double T);
/// S_{g,q}(T); throws DomainError if T < 1.
double s_gq(const GroupElement& g, const IntVector& q, double T);

/// L_j(x) = x (log(2 + 1/x))^j; throws DomainError if x <= 0.
double script_l(int j, double x);

} // namespace horolab
