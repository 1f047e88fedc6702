#include "horolab/expsum.hpp"

#include "horolab/arith.hpp"
#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"
#include "horolab/profiles.hpp"

#include <cmath>

namespace horolab {

CosetSpec make_coset(long long N, const IntMatrix2& R) {
    if (N < 1)
        throw DomainError("coset level N must be positive");
    const IntMatrix2 r = R.mod(N);
    const long long det = ((r.a * r.d - r.b * r.c - 1) % N + N) % N;
    if (det != 0)
        throw DomainError("coset representative must have determinant 1 mod N");
    return {N, r};
}

long long ext_gcd(long long a, long long b, long long& s, long long& t) {
    long long r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long long q = r0 / r1;
        long long tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return r0;
}

std::vector<IntMatrix2> enumerate_coset_ball(const CosetSpec& cs, double rho, const Sl2Matrix& M) {
    std::vector<IntMatrix2> out;
    for_each_coset_matrix(cs, rho, M, [&](const IntMatrix2& T) { out.push_back(T); });
    return out;
}

double WeightFn::operator()(const Vec4& x) const {
    if (kind == Kind::custom)
        return custom ? custom(x) : 0.0;
    double p = 1.0;
    for (double xi : x) {
        p *= bump6(xi / B);
        if (p == 0.0)
            return 0.0;
    }
    return p;
}

std::complex<double> weighted_expsum_lhs(const CosetSpec& cs, const Vec4& alpha, double X, const WeightFn& w) {
    if (!(X >= 1.0))
        throw DomainError("weighted_expsum_lhs requires X >= 1");
    const double box = w.B * X;
    CompensatedComplexSum sum;
    for_each_coset_matrix(cs, 2.0 * box, Sl2Matrix::identity(), [&](const IntMatrix2& T) {
        const Vec4 a{double(T.a), double(T.b), double(T.c), double(T.d)};
        if (std::abs(a[0]) > box || std::abs(a[1]) > box || std::abs(a[2]) > box || std::abs(a[3]) > box)
            return;
        const double wt = w(Vec4{a[0] / X, a[1] / X, a[2] / X, a[3] / X});
        if (wt == 0.0)
            return;
        double phase = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double t = alpha[i] * a[i];
            phase += t - std::round(t);
        }
        sum += wt * e(phase);
    });
    return sum.value();
}

double expsum_rhs(const Vec4& alpha, double X) {
    if (!(X >= 1.0))
        throw DomainError("expsum_rhs requires X >= 1");
    CompensatedSum s;
    const auto Q = static_cast<long long>(std::floor(X));
    for (long long q = 1; q <= Q; ++q) {
        const Vec4 qa{q * alpha[0], q * alpha[1], q * alpha[2], q * alpha[3]};
        const double dist = dist_to_z(std::span<const double>(qa));
        s += double(divisor_count(q)) / std::pow(double(q), 1.5) / (1.0 + X * dist / double(q));
    }
    return X * X * s.value();
}

std::vector<CancellationRow> cancellation_report(const CosetSpec& cs, const Vec4& alpha,
                                                 std::span<const double> Xs, const WeightFn& w, int jobs) {
    if (Xs.empty())
        throw DomainError("cancellation_report needs at least one X");
    std::vector<CancellationRow> rows(Xs.size());
    parallel_for(Xs.size(), jobs, [&](std::size_t i) {
        auto& r = rows[i];
        r.X = Xs[i];
        r.lhs = weighted_expsum_lhs(cs, alpha, r.X, w);
        r.rhs = expsum_rhs(alpha, r.X);
        r.ratio = std::abs(r.lhs) / r.rhs;
    });
    return rows;
}

std::complex<double> midapproach_transform(const SupportedField& phi, const std::function<double(double)>& h,
                                           double y, const Vec4& x, const QuadratureOptions& opt) {
    if (!(y > 0.0 && y <= 1.0))
        throw DomainError("midapproach_transform requires 0 < y <= 1");
    const double r = x[0] * x[0] + x[2] * x[2];
    if (r == 0.0)
        return 0.0;
    const double cut = plateau_cutoff(x[0] * x[3] - x[1] * x[2]);
    if (cut == 0.0)
        return 0.0;
    // |[u, v, s]|^2 = r + r s^2 + 1/r bounds the s-support.
    const double room = (phi.radius * phi.radius - r - 1.0 / r) / r;
    if (room <= 0.0)
        return 0.0;
    const double smax = std::sqrt(room);
    const double shift = (x[0] * x[1] + x[2] * x[3]) / r;
    auto integrand = [&](double s) -> std::complex<double> {
        return phi.fn(uvs_compose({x[0], x[2], s})) * h(y * s - shift);
    };
    QuadratureOptions o = opt;
    if (o.panel_width <= 0.0)
        o.panel_width = smax / 8.0;
    return y * cut * integrate(integrand, -smax, smax, o).value;
}

} // namespace horolab
