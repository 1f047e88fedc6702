#pragma once

#include "horolab/affine.hpp"

#include <optional>
#include <span>
#include <vector>

namespace horolab {

struct MajorantParams {
    int m = 3;
    int k = 1;
    long long q_max = 20;
    /// 0 selects the default cutoff for the call (ceil(y^-1/2) for delta, ceil(T^1/2) for theorem4).
    long long d_max = 0;
    int jobs = 1;
};

struct DeltaResult {
    double value = 0.0;
    /// Certified bound on the omitted remainder: the true value lies in [value, value + tail_bound].
    double tail_bound = 0.0;
    double q_tail = 0.0;
    double d_tail = 0.0;
    long long q_max = 0;
    long long d_max = 0;
};

/// Nonzero q with |q| <= Q, ordered by |q| then lexicographically.
std::vector<IntVector> frequency_shell(int k, long long Q);

/// Upper bound for the sum of |q|^-m over |q| > Q in Z^k (m > k).
double q_tail_bound(int k, int m, long long Q);
/// Upper bound for the sum of tau(d) d^-3/2 over d > D.
double d_tail_bound(long long D);
/// zeta(3/2)^2, the full d-sum.
inline constexpr double zeta_three_halves_sq = 2.6123753486854883 * 2.6123753486854883;

DeltaResult delta_m(const MajorantParams& p, double y, const TorusMatrix& xi);
/// delta_m of the matrix with left column psi and zero right column.
DeltaResult delta_m_column(const MajorantParams& p, double y, std::span<const double> psi);

/// min over ys of value / (y^1/4 log(1/y + 1)).
double delta_lower_check(const MajorantParams& p, std::span<const double> ys, const TorusMatrix& xi);

struct LfdWitness {
    long long d = 0;
    IntVector q;
};

/*!
    Scans d <= d_max and q in [-q_max, q_max]^k (one of each pair +-q, in shell order,
    with d innermost) for a violation of |d q.psi|_Z >= c d^-alpha |q|^-kappa.
    Returns the first violation, or nothing if the box passes.
*/
std::optional<LfdWitness> lfd_test(std::span<const long double> psi, double kappa, double alpha, double c,
                                   long long d_max, long long q_max, int jobs = 1);

struct Theorem4Bound {
    double term0 = 0.0;
    double series = 0.0;
    double tail = 0.0;
    long long q_max = 0;
    long long d_max = 0;
    double total() const { return term0 + series; }
};

/// L_3(S_{g,0}(T)^-1/2) + truncated series of tau(d) |q|^-m d^-3/2 L_1(1 / (1 + S_{g,dq}(T)/d)).
Theorem4Bound theorem4_rhs(const GroupElement& g, double T, const MajorantParams& p);

struct KeySumResult {
    double lhs = 0.0;   ///< partial sum plus the certified tail slack
    double slack = 0.0; ///< 2 alpha / J_max
    double rhs = 0.0;
    double ratio = 0.0;
};

KeySumResult key_sum_bound(double w1, double w2, double alpha, double beta, long long j_max = 10000);

} // namespace horolab
