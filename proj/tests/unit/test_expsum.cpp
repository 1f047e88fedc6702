#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horolab/arith.hpp"
#include "horolab/errors.hpp"
#include "horolab/expsum.hpp"
#include "horolab/profiles.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace horolab;

namespace {

std::vector<IntMatrix2> brute_ball(const CosetSpec& cs, double rho, const Sl2Matrix& M) {
    const auto W = static_cast<long long>(std::ceil(rho * frobenius_norm(M.inverse())));
    std::vector<IntMatrix2> out;
    for (long long a = -W; a <= W; ++a)
        for (long long b = -W; b <= W; ++b)
            for (long long c = -W; c <= W; ++c)
                for (long long d = -W; d <= W; ++d) {
                    if (a * d - b * c != 1)
                        continue;
                    const IntMatrix2 T{a, b, c, d};
                    if (!in_coset(cs, T))
                        continue;
                    const double x1 = a * M.a + b * M.c, x2 = a * M.b + b * M.d;
                    const double x3 = c * M.a + d * M.c, x4 = c * M.b + d * M.d;
                    if (x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 <= rho * rho)
                        out.push_back(T);
                }
    return out;
}

bool less(const IntMatrix2& x, const IntMatrix2& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
}

std::vector<IntMatrix2> sorted(std::vector<IntMatrix2> v) {
    std::sort(v.begin(), v.end(), less);
    return v;
}

// Naive sum: solve for the last entry over every triple in the box.
std::complex<double> naive_lhs(const CosetSpec& cs, const Vec4& alpha, double X, const WeightFn& w) {
    const auto W = static_cast<long long>(std::floor(w.B * X));
    std::complex<double> s = 0;
    auto add = [&](long long a, long long b, long long c, long long d) {
        if (std::llabs(d) > W || !in_coset(cs, {a, b, c, d}))
            return;
        const double wt = w({a / X, b / X, c / X, d / X});
        const double t = 2 * std::numbers::pi * (alpha[0] * a + alpha[1] * b + alpha[2] * c + alpha[3] * d);
        s += wt * std::complex<double>(std::cos(t), std::sin(t));
    };
    for (long long a = -W; a <= W; ++a)
        for (long long b = -W; b <= W; ++b)
            for (long long c = -W; c <= W; ++c) {
                if (a == 0) {
                    if (b * c == -1)
                        for (long long d = -W; d <= W; ++d)
                            add(a, b, c, d);
                } else if ((1 + b * c) % a == 0) {
                    add(a, b, c, (1 + b * c) / a);
                }
            }
    return s;
}

} // namespace

TEST_CASE("coset ball examples") {
    const auto one = make_coset(1, IntMatrix2::identity());
    CHECK(enumerate_coset_ball(one, 1.5).size() == 4);
    CHECK(brute_ball(one, 1.5, Sl2Matrix::identity()).size() == 4);
    const auto two = make_coset(2, IntMatrix2::identity());
    CHECK(enumerate_coset_ball(two, 3.0).size() == 10);
    CHECK(brute_ball(two, 3.0, Sl2Matrix::identity()).size() == 10);
    CHECK(enumerate_coset_ball(one, 1.4).empty());
    CHECK_THROWS_AS(make_coset(3, IntMatrix2{1, 1, 1, 1}), DomainError);
    long long s, t;
    CHECK(ext_gcd(12, -18, s, t) == 6);
    CHECK(12 * s - 18 * t == 6);
}

TEST_CASE("coset enumeration equals brute force") {
    CounterRng rng(51);
    for (long long N : {1, 2, 3, 5})
        for (double rho : {1.5, 3.0, 7.3, 12.0}) {
            const auto cs = make_coset(N, horolab::testing::random_sl2z(rng, 5));
            const auto got = enumerate_coset_ball(cs, rho);
            const auto want = brute_ball(cs, rho, Sl2Matrix::identity());
            REQUIRE(sorted(got) == want);
        }
    for (int i = 0; i < 4; ++i) {
        const auto M = horolab::testing::random_sl2(rng, 0.4);
        const auto cs = make_coset(2, horolab::testing::random_sl2z(rng, 4));
        const double rho = 6.0;
        REQUIRE(sorted(enumerate_coset_ball(cs, rho, M)) == brute_ball(cs, rho, M));
    }
}

TEST_CASE("coset count growth") {
    const auto one = make_coset(1, IntMatrix2::identity());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double Y : {10.0, 20.0, 40.0, 80.0}) {
        const double x = std::log(Y), y = std::log(double(enumerate_coset_ball(one, Y).size()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(slope >= 1.9);
    CHECK(slope <= 2.1);
}

TEST_CASE("weighted sum") {
    const auto one = make_coset(1, IntMatrix2::identity());
    const WeightFn w;
    CHECK(std::abs(weighted_expsum_lhs(one, {0, 0, 0, 0}, 1.0, w)) == 0);
    const auto zero = weighted_expsum_lhs(one, {0, 0, 0, 0}, 10.0, w);
    CHECK(zero.real() > 0);
    CHECK(zero.imag() == 0);
    CHECK_THROWS_AS(weighted_expsum_lhs(one, {0, 0, 0, 0}, 0.5, w), DomainError);

    CounterRng rng(52);
    for (int i = 0; i < 3; ++i) {
        const Vec4 alpha{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
        const auto cs = make_coset(i + 1, IntMatrix2::identity());
        const WeightFn wb{WeightFn::Kind::bump6_product, 1.0 + 0.5 * i, {}};
        const auto lhs = weighted_expsum_lhs(cs, alpha, 50.0, wb);
        CHECK(std::abs(lhs - naive_lhs(cs, alpha, 50.0, wb)) <= 1e-9 * std::max(1.0, std::abs(lhs)));
        const Vec4 neg{-alpha[0], -alpha[1], -alpha[2], -alpha[3]};
        CHECK(std::abs(weighted_expsum_lhs(cs, neg, 50.0, wb) - std::conj(lhs)) <= 1e-9);
        CHECK(std::abs(lhs) <= weighted_expsum_lhs(cs, {0, 0, 0, 0}, 50.0, wb).real() * (1 + 1e-12));
    }
    const WeightFn custom{WeightFn::Kind::custom, 1.0, [](const Vec4& x) { return bump6(x[0]) * bump6(x[3]); }};
    CHECK(std::abs(weighted_expsum_lhs(one, {0.1, 0.2, 0.3, 0.4}, 20.0, custom) -
                   naive_lhs(one, {0.1, 0.2, 0.3, 0.4}, 20.0, custom)) < 1e-9);
}

TEST_CASE("majorant side") {
    CHECK(expsum_rhs({0, 0, 0, 0}, 1.0) == doctest::Approx(1.0));
    const double four = 16 * (1 + 2 / std::pow(2.0, 1.5) + 2 / std::pow(3.0, 1.5) + 3.0 / 8);
    CHECK(expsum_rhs({0, 0, 0, 0}, 4.0) == doctest::Approx(four));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const Vec4 golden{phi / 4, phi * phi / 4, phi * phi * phi / 4, phi * phi * phi * phi / 4};
    double floor_c = 1e300;
    for (double X : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
        const double r = expsum_rhs(golden, X);
        CHECK(r > 0);
        CHECK(r <= expsum_rhs({0, 0, 0, 0}, X));
        floor_c = std::min(floor_c, r / (std::pow(X, 1.5) * std::log(X + 1)));
    }
    CHECK(floor_c > 0);
    const double Xs[] = {10.0, 20.0};
    const auto rows = cancellation_report(make_coset(1, IntMatrix2::identity()), golden, Xs, WeightFn{}, 2);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows)
        CHECK(r.ratio > 0);
}

TEST_CASE("midapproach transform") {
    const SupportedField phi{[](const Sl2Matrix& M) {
                                 const double n2 = frobenius_norm_sq(M);
                                 return bump6((n2 - 2) / 7) * std::exp(-n2 / 4) *
                                        std::complex<double>(std::cos(0.7 * M.b), std::sin(0.3 * M.c));
                             },
                             3.0};
    auto gauss = [](double x) { return std::exp(-x * x); };
    auto nothing = [](double) { return 0.0; };
    CounterRng rng(53);
    for (int i = 0; i < 8; ++i) {
        const auto M = horolab::testing::random_sl2(rng, 0.3);
        const double y = 0.5;
        const double sy = std::sqrt(y);
        const Vec4 x{sy * M.a, sy * M.b, sy * M.c, sy * M.d};
        const auto F = midapproach_transform(phi, gauss, y, x);
        // Composite Simpson over the line as the oracle.
        const int n = 24000;
        const double L = 6.0, hstep = 2 * L / n;
        std::complex<double> direct = 0;
        for (int j = 0; j <= n; ++j) {
            const double t = -L + j * hstep;
            const double wgt = (j == 0 || j == n) ? 1 : (j % 2 ? 4 : 2);
            direct += wgt * phi.fn(M * Sl2Matrix::unipotent(t) * Sl2Matrix::diagonal(y)) * gauss(t);
        }
        direct *= hstep / 3;
        CHECK(std::abs(F - direct) <= 1e-6);
        CHECK(std::abs(midapproach_transform(phi, nothing, y, x)) == 0);
    }
    CHECK(std::abs(midapproach_transform(phi, gauss, 0.5, {2, 0, 0, 1})) == 0);
    CHECK(std::abs(midapproach_transform(phi, gauss, 0.5, {0, 1, 0, 1})) == 0);
}
