#include "horolab/affine.hpp"

#include "horolab/errors.hpp"

#include <cmath>
#include <limits>

namespace horolab {

TorusMatrix operator*(const TorusMatrix& xi, const Sl2Matrix& M) {
    TorusMatrix out;
    out.reserve(xi.size());
    for (const auto& r : xi)
        out.push_back(r * M);
    return out;
}

Row2 combine_rows(const IntVector& q, const TorusMatrix& xi) {
    if (q.size() != xi.size())
        throw DomainError("frequency vector length does not match k");
    Row2 out{0, 0};
    for (std::size_t i = 0; i < q.size(); ++i) {
        out[0] += double(q[i]) * xi[i][0];
        out[1] += double(q[i]) * xi[i][1];
    }
    return out;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    if (g.k() != h.k())
        throw DomainError("group elements have different k");
    GroupElement out{g.M * h.M, g.v * h.M};
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        out.v[i][0] += h.v[i][0];
        out.v[i][1] += h.v[i][1];
    }
    return out;
}

GroupElement inverse(const GroupElement& g) {
    const Sl2Matrix Mi = g.M.inverse();
    TorusMatrix v = g.v * Mi;
    for (auto& r : v) {
        r[0] = -r[0];
        r[1] = -r[1];
    }
    return {Mi, v};
}

GroupElement project_pq(const GroupElement& g, const IntVector& q) {
    return {g.M, TorusMatrix{combine_rows(q, g.v)}};
}

bool PlanarGrid::contains(const Row2& w, double tol) const {
    const double det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
    const double x = w[0] - offset[0], y = w[1] - offset[1];
    // z basis = (x, y)  =>  z = (x, y) basis^-1
    const double z1 = (x * basis[1][1] - y * basis[1][0]) / det;
    const double z2 = (-x * basis[0][1] + y * basis[0][0]) / det;
    return std::abs(z1 - std::round(z1)) <= tol && std::abs(z2 - std::round(z2)) <= tol;
}

PlanarGrid grid_of(const GroupElement& g, const IntVector& q) {
    const Sl2Matrix& M = g.M;
    return {Basis2{Row2{M.a, M.b}, Row2{M.c, M.d}}, combine_rows(q, g.v)};
}

bool RectangleRT::contains(const Row2& w, double scale) const {
    return std::abs(w[0]) <= scale / T && std::abs(w[1]) <= scale;
}

double gap_of_point(long long m, long long n, const Row2& eta, const Sl2Matrix& M, double T) {
    const Row2 z{double(m) + eta[0], double(n) + eta[1]};
    const Row2 w = z * M;
    return std::max(T * std::abs(w[0]), std::abs(w[1]));
}

GapResult s_gq_detail(const GroupElement& g, const IntVector& q, double T) {
    if (!(T >= 1.0))
        throw DomainError("s_gq requires T >= 1");
    const Sl2Matrix& M = g.M;
    const Row2 eta = combine_rows(q, g.xi());
    bool zero_q = true;
    for (auto x : q)
        zero_q = zero_q && x == 0;

    // Work with the lattice Z^2 (M diag(T, 1)), where the gap is the sup-norm.
    const Basis2 B{Row2{T * M.a, M.b}, Row2{T * M.c, M.d}};
    const Row2 shift{std::round(eta[0]), std::round(eta[1])};
    const Row2 frac{eta[0] - shift[0], eta[1] - shift[1]};

    GapResult best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](long long m, long long n) {
        if (zero_q && m == 0 && n == 0)
            return;
        const double val = gap_of_point(m, n, eta, M, T);
        if (val < best.value || (val == best.value && (m < best.coeffs[0] || (m == best.coeffs[0] && n < best.coeffs[1])))) {
            best.value = val;
            best.coeffs = {m, n};
        }
    };

    // First pass: the shortest reduced vector (q = 0) or a disc that surely meets the grid (q != 0).
    const auto red = gauss_reduce(B);
    const double len1 = std::sqrt(dot(red.rows[0], red.rows[0]));
    const double len2 = std::sqrt(dot(red.rows[1], red.rows[1]));
    const double radius = zero_q ? len1 : len1 + len2;
    const auto sx = static_cast<long long>(shift[0]), sy = static_cast<long long>(shift[1]);
    auto visit = [&](long long m, long long n) { consider(m - sx, n - sy); };
    for_each_lattice_point_in_disc(B, frac, radius, visit);
    if (!std::isfinite(best.value)) {
        best.value = 1e30;
        best.capped = true;
        return best;
    }
    // The minimizer has Euclidean norm at most sqrt(2) times its sup-norm.
    const double wider = std::sqrt(2.0) * best.value;
    if (wider > radius)
        for_each_lattice_point_in_disc(B, frac, wider, visit);
    best.point = Row2{double(best.coeffs[0]) + eta[0], double(best.coeffs[1]) + eta[1]} * M;
    return best;
}

double s_gq(const GroupElement& g, const IntVector& q, double T) { return s_gq_detail(g, q, T).value; }

double script_l(int j, double x) {
    if (!(x > 0.0))
        throw DomainError("script_l requires x > 0");
    if (j < 0)
        throw DomainError("script_l requires j >= 0");
    return x * std::pow(std::log(2.0 + 1.0 / x), j);
}

} // namespace horolab
