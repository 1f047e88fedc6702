#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horolab/arith.hpp"
#include "horolab/errors.hpp"
#include "horolab/majorant.hpp"
#include "support.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace horolab;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return out;
}

} // namespace

TEST_CASE("delta anchor and hand values") {
    const double anchor = 2 * boost::math::zeta(3.0) * std::pow(boost::math::zeta(1.5), 2);
    MajorantParams p;
    const auto r = delta_m(p, 0.25, {Row2{0, 0}});
    CHECK(r.value <= anchor);
    CHECK(r.value + r.tail_bound >= anchor);
    CHECK(r.tail_bound == doctest::Approx(r.q_tail + r.d_tail));

    MajorantParams one{3, 1, 1, 1, 1};
    CHECK(delta_m(one, 0.25, {Row2{0.5, 0}}).value == doctest::Approx(1.0));
    const double psi[] = {0.5};
    CHECK(delta_m_column(one, 0.25, psi).value == doctest::Approx(1.0));

    CHECK_THROWS_AS(delta_m(p, 0.0, {Row2{0, 0}}), DomainError);
    CHECK_THROWS_AS(delta_m(p, 1.5, {Row2{0, 0}}), DomainError);
    MajorantParams bad{1, 1, 5, 5, 1};
    CHECK_THROWS_AS(delta_m(bad, 0.5, {Row2{0, 0}}), DomainError);
}

TEST_CASE("frequency shell ordering") {
    const auto shell = frequency_shell(2, 3);
    std::size_t count = 0;
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b)
            count += (a || b) && a * a + b * b <= 9;
    CHECK(shell.size() == count);
    for (std::size_t i = 1; i < shell.size(); ++i) {
        const auto n0 = shell[i - 1][0] * shell[i - 1][0] + shell[i - 1][1] * shell[i - 1][1];
        const auto n1 = shell[i][0] * shell[i][0] + shell[i][1] * shell[i][1];
        REQUIRE((n0 < n1 || (n0 == n1 && shell[i - 1] < shell[i])));
    }
}

TEST_CASE("delta monotone and scaling on a fixed grid") {
    MajorantParams p{5, 2, 12, 200, 0};
    const TorusMatrix xi{Row2{std::sqrt(2.0), 0.3}, Row2{std::sqrt(3.0), -0.7}};
    const auto ys = log_grid(1e-4, 1.0, 10);
    std::vector<double> vals;
    for (double y : ys)
        vals.push_back(delta_m(p, y, xi).value);
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = i; j < ys.size(); ++j) {
            REQUIRE(vals[i] <= vals[j]);
            REQUIRE(vals[j] <= std::sqrt(ys[j] / ys[i]) * vals[i] * (1 + 1e-12));
        }
}

TEST_CASE("column domination") {
    CounterRng rng(41);
    MajorantParams p{4, 2, 10, 0, 1};
    for (int i = 0; i < 20; ++i) {
        const double psi[] = {rng.uniform(), rng.uniform()};
        const TorusMatrix xi{Row2{psi[0], rng.uniform()}, Row2{psi[1], rng.uniform()}};
        const double y = std::exp(rng.uniform(std::log(1e-4), 0.0));
        CHECK(delta_m(p, y, xi).value <= delta_m_column(p, y, psi).value * (1 + 1e-12));
    }
    const double zero[] = {0.0, 0.0};
    CHECK(delta_m_column(p, 0.1, zero).value == delta_m(p, 0.1, {Row2{0, 0}, Row2{0, 0}}).value);
}

TEST_CASE("tail certificate") {
    CounterRng rng(42);
    for (int i = 0; i < 6; ++i) {
        const int k = 1 + int(i % 2);
        MajorantParams p{k + 2, k, 8, 30, 0};
        TorusMatrix xi(k);
        for (auto& r : xi)
            r = {rng.uniform(), rng.uniform()};
        const double y = 0.01;
        const auto base = delta_m(p, y, xi);
        auto wide = p;
        wide.q_max *= 2;
        wide.d_max *= 2;
        const auto ext = delta_m(p.k == k ? wide : p, y, xi);
        CHECK(ext.value >= base.value);
        CHECK(ext.value - base.value < base.tail_bound);
    }
    for (int k = 1; k <= 3; ++k)
        for (int m = k + 1; m <= k + 3; ++m) {
            const long long Q = 6;
            double direct = 0;
            const long long W = 400 / (k == 1 ? 1 : (k == 2 ? 4 : 20));
            std::vector<long long> q(k, -W);
            for (;;) {
                double n2 = 0;
                for (auto x : q)
                    n2 += double(x * x);
                if (n2 > double(Q * Q))
                    direct += std::pow(n2, -m / 2.0);
                int pos = 0;
                while (pos < k && q[pos] == W)
                    q[pos++] = -W;
                if (pos == k)
                    break;
                ++q[pos];
            }
            CHECK(direct <= q_tail_bound(k, m, Q));
        }
    double dsum = 0;
    for (long long d = 11; d <= 2'000'000; ++d)
        dsum += divisor_count(d) * std::pow(double(d), -1.5);
    CHECK(dsum <= d_tail_bound(10));
}

TEST_CASE("lower bound sweep") {
    MajorantParams p{3, 2, 20, 0, 0};
    const TorusMatrix xi{Row2{std::sqrt(2.0), std::sqrt(2.0)}, Row2{std::sqrt(3.0), std::sqrt(3.0)}};
    const std::vector<double> ys{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const double c = delta_lower_check(p, ys, xi);
    CHECK(std::isfinite(c));
    CHECK(c >= 0.05);
    MajorantParams fixed{3, 1, 20, 1000, 0};
    CHECK(delta_m(fixed, 1e-6, {Row2{0, 0}}).value == delta_m(fixed, 1e-1, {Row2{0, 0}}).value);
    const std::vector<double> tiny{1e-6};
    CHECK(delta_lower_check(fixed, tiny, {Row2{0, 0}}) > 20);
}

TEST_CASE("lfd scans") {
    const long double half[] = {0.5L};
    const auto w = lfd_test(half, 1, 1, 1e-3, 100, 100);
    REQUIRE(w.has_value());
    CHECK(w->d == 2);
    CHECK(w->q == IntVector{1});
    const long double golden[] = {(1 + std::sqrt(5.0L)) / 2};
    CHECK_FALSE(lfd_test(golden, 1, 1, 0.2, 10000, 10000, 0).has_value());
    const long double root2[] = {std::sqrt(2.0L)};
    CHECK_FALSE(lfd_test(root2, 1, 1, 0.25, 10000, 10000, 0).has_value());
    CHECK(lfd_test(root2, 1, 1, 0.5, 100, 100).has_value());
}

TEST_CASE("theorem4 bound") {
    MajorantParams p;
    const auto g = GroupElement::identity(1);
    const auto a = theorem4_rhs(g, 100, p), b = theorem4_rhs(g, 100, p);
    CHECK(a.total() > 0);
    CHECK(std::isfinite(a.total()));
    CHECK(a.total() == b.total());
    CHECK(a.term0 == doctest::Approx(std::pow(std::log(3.0), 3)));
    CHECK_THROWS_AS(theorem4_rhs(g, 1.5, p), DomainError);

    CounterRng rng(43);
    p.d_max = 100;
    int decreasing = 0;
    for (int i = 0; i < 5; ++i) {
        const GroupElement h = GroupElement::from_xi({Row2{rng.uniform(), rng.uniform()}},
                                                     horolab::testing::random_sl2(rng, 0.5));
        const double t2 = theorem4_rhs(h, 1e2, p).total(), t3 = theorem4_rhs(h, 1e3, p).total(),
                     t4 = theorem4_rhs(h, 1e4, p).total();
        decreasing += t2 > t3 && t3 > t4;
    }
    CHECK(decreasing == 5);
}

TEST_CASE("key sum bound") {
    const auto r = key_sum_bound(0, 0, 1, 3.7);
    const double target = std::numbers::pi * std::numbers::pi / 3 - 1;
    CHECK(r.lhs - r.slack <= target);
    CHECK(r.lhs >= target);
    CHECK(r.slack == doctest::Approx(2.0 / 10000));
    CHECK(key_sum_bound(0, 0, 1, 1000).lhs == r.lhs);
    double worst = 0;
    for (double w1 : {0.0, 0.1, 0.25, 0.5})
        for (double w2 : {0.0, 0.1, 0.25, 0.5})
            for (double al : {0.1, 1.0, 10.0, 100.0})
                for (double be : {0.1, 1.0, 10.0, 1000.0}) {
                    const auto s = key_sum_bound(w1, w2, al, be);
                    double plain = 0;
                    for (long long j = -10000; j <= 10000; ++j)
                        plain += al / std::pow(al + std::abs(double(j)), 2);
                    REQUIRE(s.lhs - s.slack <= plain * (1 + 1e-12));
                    REQUIRE(s.ratio > 0);
                    worst = std::max(worst, s.ratio);
                }
    CHECK(worst <= 50);
}
