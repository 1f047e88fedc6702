#pragma once

#include <array>
#include <complex>
#include <span>

namespace horolab {

/// tau(d); throws DomainError if d < 1.
long long divisor_count(long long d);
/// sum of tau(d) for 1 <= d <= X
long long divisor_count_partial_sum(long long X);

/// Euclidean distance from v to the nearest integer vector.
double dist_to_z(std::span<const double> v);
inline double dist_to_z(double x) { return std::abs(x - std::round(x)); }

long long gcd(long long a, long long b);
/// a^-1 mod q in [1, q]; throws DomainError unless gcd(a, q) = 1.
long long mod_inverse(long long a, long long q);

/// e(num / den) with the numerator reduced exactly before the float conversion.
std::complex<double> e_rational(long long num, long long den);

/// K(m, n; q), summed directly; the imaginary part is left in place for callers to inspect.
std::complex<double> kloosterman(long long m, long long n, long long q);

using IntVec4 = std::array<long long, 4>;

/// Data of the complete quadratic exponential sum S(q, v) over the class x = r mod N.
struct CongruenceData {
    long long q = 1;
    long long N = 1;
    IntVec4 r{1, 0, 0, 1};
    IntVec4 v{0, 0, 0, 0};
};

/// Reduces r mod N and validates q, N >= 1 and r1 r4 - r2 r3 = 1 mod N.
CongruenceData make_congruence(long long q, long long N, const IntVec4& r, const IntVec4& v);

/// Largest (qN)^4 q accepted by quad_expsum_bruteforce.
inline constexpr double bruteforce_work_limit = 1e8;

/// Direct double sum; throws ResourceGuard beyond bruteforce_work_limit.
std::complex<double> quad_expsum_bruteforce(const CongruenceData& cd);
/// Closed form through Kloosterman sums.
std::complex<double> quad_expsum_closed(const CongruenceData& cd);

} // namespace horolab
