#include "horolab/arith.hpp"

#include "horolab/compensated.hpp"
#include "horolab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace horolab {

namespace {

constexpr long long sieve_limit = 1'000'000;

const std::vector<int>& divisor_table() {
    static const std::vector<int> table = [] {
        std::vector<int> t(sieve_limit + 1, 0);
        for (long long a = 1; a <= sieve_limit; ++a)
            for (long long m = a; m <= sieve_limit; m += a)
                ++t[m];
        return t;
    }();
    return table;
}

long long floor_mod(long long x, long long n) {
    const long long r = x % n;
    return r < 0 ? r + n : r;
}

long long mul_mod(long long a, long long b, long long n) {
    return static_cast<long long>((static_cast<__int128>(a) * b) % n + n) % n;
}

} // namespace

long long divisor_count(long long d) {
    if (d < 1)
        throw DomainError("divisor_count requires d >= 1");
    if (d <= sieve_limit)
        return divisor_table()[d];
    long long count = 1;
    for (long long p = 2; p * p <= d; ++p) {
        int e = 0;
        while (d % p == 0) {
            d /= p;
            ++e;
        }
        count *= e + 1;
    }
    return d > 1 ? count * 2 : count;
}

long long divisor_count_partial_sum(long long X) {
    long long total = 0;
    for (long long a = 1; a <= X; ++a)
        total += X / a;
    return total;
}

double dist_to_z(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        const double f = x - std::round(x);
        s += f * f;
    }
    return std::sqrt(s);
}

long long gcd(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long mod_inverse(long long a, long long q) {
    if (q < 1)
        throw DomainError("mod_inverse requires q >= 1");
    long long r0 = floor_mod(a, q), r1 = q, s0 = 1, s1 = 0;
    if (q == 1)
        return 1;
    while (r1 != 0) {
        const long long t = r0 / r1;
        long long tmp = r0 - t * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - t * s1;
        s0 = s1;
        s1 = tmp;
    }
    if (r0 != 1)
        throw DomainError("mod_inverse: arguments are not coprime");
    const long long inv = floor_mod(s0, q);
    return inv == 0 ? q : inv;
}

std::complex<double> e_rational(long long num, long long den) {
    const long long r = floor_mod(num, den);
    const double t = 2 * std::numbers::pi * (double(r) / double(den));
    return {std::cos(t), std::sin(t)};
}

std::complex<double> kloosterman(long long m, long long n, long long q) {
    if (q < 1)
        throw DomainError("kloosterman requires q >= 1");
    CompensatedComplexSum sum;
    const long long mm = floor_mod(m, q), nn = floor_mod(n, q);
    for (long long a = 1; a <= q; ++a) {
        if (gcd(a, q) != 1)
            continue;
        const long long abar = mod_inverse(a, q);
        sum += e_rational((mul_mod(mm, a, q) + mul_mod(nn, abar, q)) % q, q);
    }
    return sum.value();
}

CongruenceData make_congruence(long long q, long long N, const IntVec4& r, const IntVec4& v) {
    if (q < 1 || N < 1)
        throw DomainError("congruence data requires q, N >= 1");
    CongruenceData cd{q, N, {}, v};
    for (int i = 0; i < 4; ++i)
        cd.r[i] = floor_mod(r[i], N);
    if (floor_mod(cd.r[0] * cd.r[3] - cd.r[1] * cd.r[2] - 1, N) != 0)
        throw DomainError("r does not have determinant 1 mod N");
    return cd;
}

std::complex<double> quad_expsum_bruteforce(const CongruenceData& cd) {
    const long long q = cd.q, N = cd.N, qN = q * N;
    const double work = std::pow(double(qN), 4) * double(q);
    if (work > bruteforce_work_limit)
        throw ResourceGuard("quad_expsum_bruteforce: (qN)^4 q = " + std::to_string(work) +
                            " exceeds the limit 1e8");
    std::vector<long long> units;
    for (long long a = 1; a <= q; ++a)
        if (gcd(a, q) == 1)
            units.push_back(a % q);
    CompensatedComplexSum sum;
    std::array<long long, 4> x{};
    for (long long t0 = 0; t0 < q; ++t0)
        for (long long t1 = 0; t1 < q; ++t1)
            for (long long t2 = 0; t2 < q; ++t2)
                for (long long t3 = 0; t3 < q; ++t3) {
                    x = {cd.r[0] + N * t0, cd.r[1] + N * t1, cd.r[2] + N * t2, cd.r[3] + N * t3};
                    const long long Q = floor_mod(x[0] * x[3] - x[1] * x[2] - 1, qN);
                    long long lin = 0;
                    for (int i = 0; i < 4; ++i)
                        lin = floor_mod(lin + mul_mod(floor_mod(cd.v[i], qN), x[i], qN), qN);
                    for (long long a : units)
                        sum += e_rational((mul_mod(a * N % qN, Q, qN) + lin) % qN, qN);
                }
    return sum.value();
}

std::complex<double> quad_expsum_closed(const CongruenceData& cd) {
    const long long q = cd.q, N = cd.N;
    CompensatedComplexSum sum;
    std::array<long long, 4> c{};
    for (c[0] = 0; c[0] < N; ++c[0])
        for (c[1] = 0; c[1] < N; ++c[1])
            for (c[2] = 0; c[2] < N; ++c[2])
                for (c[3] = 0; c[3] < N; ++c[3]) {
                    std::array<long long, 4> w{};
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i) {
                        const long long diff = cd.v[i] - q * c[i];
                        ok = floor_mod(diff, N) == 0;
                        w[i] = diff / N;
                    }
                    if (!ok)
                        continue;
                    long long rc = 0;
                    for (int i = 0; i < 4; ++i)
                        rc = floor_mod(rc + cd.r[i] * c[i], N);
                    const long long n = -floor_mod(mul_mod(w[0], w[3], q) - mul_mod(w[1], w[2], q), q);
                    sum += e_rational(rc, N) * kloosterman(-1, n, q);
                }
    return double(q) * double(q) * sum.value();
}

} // namespace horolab
