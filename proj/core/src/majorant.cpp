#include "horolab/majorant.hpp"

#include "horolab/arith.hpp"
#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace horolab {

namespace {

long long norm_sq(const IntVector& q) {
    long long s = 0;
    for (auto x : q)
        s += x * x;
    return s;
}

void check_params(const MajorantParams& p) {
    if (p.k < 1)
        throw DomainError("majorant requires k >= 1");
    if (p.m <= p.k)
        throw DomainError("majorant requires m > k");
    if (p.q_max < 1 || p.d_max < 0)
        throw DomainError("majorant truncation radii must be positive");
}

std::vector<double> divisor_weights(long long D) {
    std::vector<double> w(D + 1, 0.0);
    for (long long d = 1; d <= D; ++d)
        w[d] = double(divisor_count(d)) / (double(d) * std::sqrt(double(d)));
    return w;
}

double q_partial(const std::vector<IntVector>& shell, int m) {
    CompensatedSum s;
    for (const auto& q : shell)
        s += std::pow(std::sqrt(double(norm_sq(q))), -m);
    return s.value();
}

} // namespace

std::vector<IntVector> frequency_shell(int k, long long Q) {
    std::vector<IntVector> out;
    IntVector q(k, -Q);
    const long long Q2 = Q * Q;
    for (;;) {
        const long long n2 = norm_sq(q);
        if (n2 > 0 && n2 <= Q2)
            out.push_back(q);
        int i = k - 1;
        while (i >= 0 && q[i] == Q) {
            q[i] = -Q;
            --i;
        }
        if (i < 0)
            break;
        ++q[i];
    }
    std::stable_sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
        const long long na = norm_sq(a), nb = norm_sq(b);
        return na != nb ? na < nb : a < b;
    });
    return out;
}

double q_tail_bound(int k, int m, long long Q) {
    return double(m) * std::pow(2.0 + 1.0 / double(Q), k) * std::pow(double(Q), k - m) / double(m - k);
}

double d_tail_bound(long long D) {
    return 3.0 / std::sqrt(double(D)) * (std::log(double(D)) + 3.0);
}

DeltaResult delta_m(const MajorantParams& p, double y, const TorusMatrix& xi) {
    check_params(p);
    if (!(y > 0.0 && y <= 1.0))
        throw DomainError("delta_m requires 0 < y <= 1");
    if (xi.size() != std::size_t(p.k))
        throw DomainError("xi must have k rows");
    const long long D = p.d_max > 0 ? p.d_max : static_cast<long long>(std::ceil(1.0 / std::sqrt(y)));
    const auto shell = frequency_shell(p.k, p.q_max);
    const auto w = divisor_weights(D);
    const double sy = std::sqrt(y);

    std::vector<double> partial(shell.size());
    parallel_for(shell.size(), p.jobs, [&](std::size_t i) {
        const Row2 qx = combine_rows(shell[i], xi);
        CompensatedSum s;
        for (long long d = 1; d <= D; ++d) {
            const double dd = double(d);
            const double x0 = dd * qx[0], x1 = dd * qx[1];
            const double f0 = x0 - std::round(x0), f1 = x1 - std::round(x1);
            const double dist = std::sqrt(f0 * f0 + f1 * f1);
            s += w[d] / (1.0 + dist / (dd * sy));
        }
        partial[i] = s.value() * std::pow(std::sqrt(double(norm_sq(shell[i]))), -p.m);
    });
    CompensatedSum total;
    for (double x : partial)
        total += x;

    DeltaResult r;
    r.value = total.value();
    r.q_max = p.q_max;
    r.d_max = D;
    r.q_tail = q_tail_bound(p.k, p.m, p.q_max) * zeta_three_halves_sq;
    r.d_tail = q_partial(shell, p.m) * d_tail_bound(D);
    r.tail_bound = r.q_tail + r.d_tail;
    return r;
}

DeltaResult delta_m_column(const MajorantParams& p, double y, std::span<const double> psi) {
    TorusMatrix xi;
    for (double x : psi)
        xi.push_back({x, 0.0});
    return delta_m(p, y, xi);
}

double delta_lower_check(const MajorantParams& p, std::span<const double> ys, const TorusMatrix& xi) {
    double best = INFINITY;
    for (double y : ys) {
        const double v = delta_m(p, y, xi).value;
        best = std::min(best, v / (std::pow(y, 0.25) * std::log(1.0 / y + 1.0)));
    }
    return best;
}

std::optional<LfdWitness> lfd_test(std::span<const long double> psi, double kappa, double alpha, double c,
                                   long long d_max, long long q_max, int jobs) {
    if (d_max < 1 || q_max < 1)
        throw DomainError("lfd_test requires positive scan bounds");
    const int k = int(psi.size());
    std::vector<IntVector> half;
    for (auto& q : frequency_shell(k, q_max)) {
        // keep q whose first nonzero entry is positive
        auto it = std::find_if(q.begin(), q.end(), [](long long x) { return x != 0; });
        if (*it > 0)
            half.push_back(q);
    }
    // Box scan instead of the Euclidean ball: add the corners.
    std::vector<IntVector> box;
    {
        IntVector q(k, -q_max);
        for (;;) {
            auto it = std::find_if(q.begin(), q.end(), [](long long x) { return x != 0; });
            if (it != q.end() && *it > 0 && norm_sq(q) > q_max * q_max)
                box.push_back(q);
            int i = k - 1;
            while (i >= 0 && q[i] == q_max) {
                q[i] = -q_max;
                --i;
            }
            if (i < 0)
                break;
            ++q[i];
        }
        std::stable_sort(box.begin(), box.end(), [](const IntVector& a, const IntVector& b) {
            const long long na = norm_sq(a), nb = norm_sq(b);
            return na != nb ? na < nb : a < b;
        });
    }
    half.insert(half.end(), box.begin(), box.end());

    std::vector<double> dpow(d_max + 1);
    for (long long d = 1; d <= d_max; ++d)
        dpow[d] = std::pow(double(d), -alpha);
    std::vector<long long> first_bad(half.size(), 0);
    std::atomic<std::size_t> earliest{half.size()};
    parallel_for(half.size(), jobs, [&](std::size_t i) {
        if (i > earliest.load())
            return;
        const auto& q = half[i];
        long double qp = 0;
        for (int j = 0; j < k; ++j)
            qp += (long double)q[j] * psi[j];
        const long double frac = qp - std::floor(qp);
        const double qn = std::sqrt(double(norm_sq(q)));
        const double qfac = c * std::pow(qn, -kappa);
        for (long long d = 1; d <= d_max; ++d) {
            long double x = (long double)d * frac;
            x -= (long double)(long long)(x + 0.5L);
            const double dist = double(std::fabs(x));
            if (dist < qfac * dpow[d]) {
                first_bad[i] = d;
                std::size_t cur = earliest.load();
                while (i < cur && !earliest.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    });
    for (std::size_t i = 0; i < half.size(); ++i)
        if (first_bad[i] != 0)
            return LfdWitness{first_bad[i], half[i]};
    return std::nullopt;
}

Theorem4Bound theorem4_rhs(const GroupElement& g, double T, const MajorantParams& p) {
    check_params(p);
    if (!(T >= 2.0))
        throw DomainError("theorem4_rhs requires T >= 2");
    if (g.k() != std::size_t(p.k))
        throw DomainError("group element does not match k");
    const long long D = p.d_max > 0 ? p.d_max : static_cast<long long>(std::ceil(std::sqrt(T)));
    const auto shell = frequency_shell(p.k, p.q_max);
    const auto w = divisor_weights(D);

    Theorem4Bound out;
    out.q_max = p.q_max;
    out.d_max = D;
    out.term0 = script_l(3, 1.0 / std::sqrt(s_gq(g, IntVector(p.k, 0), T)));

    std::vector<double> partial(shell.size());
    parallel_for(shell.size(), p.jobs, [&](std::size_t i) {
        CompensatedSum s;
        IntVector dq(p.k);
        for (long long d = 1; d <= D; ++d) {
            for (int j = 0; j < p.k; ++j)
                dq[j] = d * shell[i][j];
            const double S = s_gq(g, dq, T);
            s += w[d] * script_l(1, 1.0 / (1.0 + S / double(d)));
        }
        partial[i] = s.value() * std::pow(std::sqrt(double(norm_sq(shell[i]))), -p.m);
    });
    CompensatedSum total;
    for (double x : partial)
        total += x;
    out.series = total.value();
    const double l1max = std::log(3.0);
    out.tail = l1max * (q_tail_bound(p.k, p.m, p.q_max) * zeta_three_halves_sq +
                        q_partial(shell, p.m) * d_tail_bound(D));
    return out;
}

KeySumResult key_sum_bound(double w1, double w2, double alpha, double beta, long long j_max) {
    if (!(w1 >= 0 && w1 <= 0.5 && w2 >= 0 && w2 <= 0.5))
        throw DomainError("key_sum_bound requires w1, w2 in [0, 1/2]");
    if (!(alpha >= 0.1) || !(beta > 0))
        throw DomainError("key_sum_bound requires alpha >= 1/10 and beta > 0");
    if (j_max < 1)
        throw DomainError("key_sum_bound requires J_max >= 1");
    CompensatedSum s;
    for (long long j = -j_max; j <= j_max; ++j) {
        const double aj = alpha + std::abs(double(j));
        const double dist = dist_to_z(double(j) * w1 + w2);
        s += alpha / (aj * aj) / (1.0 + alpha * beta * (w1 + dist) / aj);
    }
    KeySumResult r;
    r.slack = 2.0 * alpha / double(j_max);
    r.lhs = s.value() + r.slack;
    r.rhs = script_l(1, 1.0 / (1.0 + alpha * beta * w1 + beta * w2)) + script_l(2, 1.0 / (1.0 + beta));
    r.ratio = r.lhs / r.rhs;
    return r;
}

} // namespace horolab
