#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horolab/affine.hpp"
#include "horolab/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace horolab;
using horolab::testing::max_entry_diff;
using horolab::testing::random_sl2;

namespace {

TorusMatrix random_xi(CounterRng& rng, std::size_t k) {
    TorusMatrix xi(k);
    for (auto& r : xi)
        r = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return xi;
}

GroupElement random_g(CounterRng& rng, std::size_t k, double spread = 1.0) {
    return GroupElement::from_xi(random_xi(rng, k), random_sl2(rng, spread));
}

double torus_diff(const TorusMatrix& x, const TorusMatrix& y) {
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max({d, std::abs(x[i][0] - y[i][0]), std::abs(x[i][1] - y[i][1])});
    return d;
}

struct Scan {
    double value = std::numeric_limits<double>::infinity();
    long long m = 0, n = 0;
};

// Exhaustive scan of the window |m|, |n| <= W with the gap written out directly.
Scan scan_gap(const GroupElement& g, const IntVector& q, double T, long long W = 64) {
    const Row2 eta = combine_rows(q, g.xi());
    bool zero_q = true;
    for (auto x : q)
        zero_q = zero_q && x == 0;
    Scan best;
    for (long long m = -W; m <= W; ++m)
        for (long long n = -W; n <= W; ++n) {
            if (zero_q && m == 0 && n == 0)
                continue;
            const double z1 = m + eta[0], z2 = n + eta[1];
            const double w1 = z1 * g.M.a + z2 * g.M.c, w2 = z1 * g.M.b + z2 * g.M.d;
            const double v = std::max(T * std::abs(w1), std::abs(w2));
            if (v < best.value)
                best = {v, m, n};
        }
    return best;
}

} // namespace

TEST_CASE("multiply and inverse") {
    const TorusMatrix v{Row2{0.2, -0.3}}, w{Row2{1.5, 0.25}};
    auto p = multiply({Sl2Matrix::identity(), v}, {Sl2Matrix::identity(), w});
    CHECK(p.v[0][0] == doctest::Approx(1.7));
    CHECK(p.v[0][1] == doctest::Approx(-0.05));
    const auto M = Sl2Matrix::from_entries(2, 1, 1, 1);
    p = multiply({M, TorusMatrix{Row2{0, 0}}}, {Sl2Matrix::identity(), w});
    CHECK(max_entry_diff(p.M, M) == 0);
    CHECK(torus_diff(p.v, w) == 0);
    CHECK_THROWS_AS(multiply(GroupElement::identity(1), GroupElement::identity(2)), DomainError);

    auto inv = inverse({Sl2Matrix::identity(), v});
    CHECK(torus_diff(inv.v, TorusMatrix{Row2{-0.2, 0.3}}) < 1e-15);
    inv = inverse({M, TorusMatrix{Row2{0, 0}}});
    CHECK(max_entry_diff(inv.M, M.inverse()) < 1e-15);

    CounterRng rng(21);
    for (int i = 0; i < 200; ++i) {
        const std::size_t k = 1 + rng.integer(0, 3);
        const auto g = random_g(rng, k), h = random_g(rng, k), f = random_g(rng, k);
        const auto gh = multiply(g, h);
        CHECK(max_entry_diff(gh.M, g.M * h.M) < 1e-12);
        CHECK(torus_diff(gh.v, [&] {
                  auto out = g.v * h.M;
                  for (std::size_t j = 0; j < k; ++j)
                      out[j] = {out[j][0] + h.v[j][0], out[j][1] + h.v[j][1]};
                  return out;
              }()) < 1e-12);
        const auto id = multiply(g, inverse(g));
        CHECK(max_entry_diff(id.M, Sl2Matrix::identity()) < 1e-10);
        CHECK(torus_diff(id.v, TorusMatrix(k, Row2{0, 0})) < 1e-10);
        const auto l = multiply(multiply(g, h), f), r = multiply(g, multiply(h, f));
        CHECK(max_entry_diff(l.M, r.M) < 1e-10);
        CHECK(torus_diff(l.v, r.v) < 1e-10);
    }
}

TEST_CASE("projection") {
    CounterRng rng(22);
    const auto g = random_g(rng, 3);
    auto p = project_pq(g, {0, 0, 0});
    CHECK(p.k() == 1);
    CHECK(p.v[0] == Row2{0, 0});
    const TorusMatrix xi{Row2{0.1, 0.2}, Row2{-0.4, 0.7}};
    p = project_pq({Sl2Matrix::identity(), xi}, {2, -1});
    CHECK(p.v[0][0] == doctest::Approx(0.6));
    CHECK(p.v[0][1] == doctest::Approx(-0.3));
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = 1 + rng.integer(0, 3);
        IntVector q(k);
        for (auto& x : q)
            x = rng.integer(-5, 5);
        const auto a = random_g(rng, k), b = random_g(rng, k);
        const auto lhs = project_pq(multiply(a, b), q);
        const auto rhs = multiply(project_pq(a, q), project_pq(b, q));
        CHECK(max_entry_diff(lhs.M, rhs.M) < 1e-12);
        CHECK(torus_diff(lhs.v, rhs.v) < 1e-10);
    }
}

TEST_CASE("grids") {
    auto grid = grid_of(GroupElement::identity(1), {3});
    CHECK(grid.contains({0, 0}));
    CHECK(grid.contains({4, -2}));
    CHECK_FALSE(grid.contains({0.5, 0}));
    grid = grid_of({Sl2Matrix::identity(), TorusMatrix{Row2{0.25, 0.5}}}, {1});
    CHECK(grid.contains({1.25, -0.5}));
    CHECK_FALSE(grid.contains({0, 0}));
    CounterRng rng(23);
    for (int i = 0; i < 50; ++i) {
        const auto g = random_g(rng, 2);
        const IntVector q{rng.integer(-3, 3), rng.integer(-3, 3)};
        grid = grid_of(g, q);
        const auto proj = project_pq(g, q);
        CHECK(grid.offset[0] == doctest::Approx(proj.v[0][0]));
        CHECK(grid.offset[1] == doctest::Approx(proj.v[0][1]));
        const auto res = s_gq_detail(g, q, 5.0);
        CHECK(grid.contains(res.point));
    }
}

TEST_CASE("s_gq examples") {
    for (double T : {1.0, 2.0, 17.0, 1e4})
        CHECK(s_gq(GroupElement::identity(1), {0}, T) == doctest::Approx(1));
    const GroupElement g{Sl2Matrix::identity(), TorusMatrix{Row2{0.5, 0.5}}};
    CHECK(s_gq(g, {1}, 1.0) == doctest::Approx(0.5));
    CHECK(scan_gap(g, {1}, 1.0).value == doctest::Approx(0.5));
    CHECK_THROWS_AS(s_gq(g, {1}, 0.5), DomainError);
}

TEST_CASE("s_gq equals exhaustive scan") {
    CounterRng rng(24);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t k = 1 + rng.integer(0, 2);
        const auto g = random_g(rng, k, 0.7);
        IntVector q(k, 0);
        if (i % 3)
            for (auto& x : q)
                x = rng.integer(-4, 4);
        const double T = std::exp(rng.uniform(0, std::log(200.0)));
        const auto scan = scan_gap(g, q, T);
        if (std::abs(scan.m) >= 60 || std::abs(scan.n) >= 60)
            continue;
        const auto res = s_gq_detail(g, q, T);
        REQUIRE(res.value == scan.value);
        ++compared;
    }
    CHECK(compared > 200);
}

TEST_CASE("script L") {
    for (double x : {1e-6, 0.3, 5.0})
        CHECK(script_l(0, x) == x);
    CHECK(script_l(1, 1.0) == doctest::Approx(std::log(3.0)));
    CHECK(script_l(2, 0.5) == doctest::Approx(0.5 * std::log(4.0) * std::log(4.0)));
    CHECK_THROWS_AS(script_l(1, 0.0), DomainError);
    CHECK_THROWS_AS(script_l(1, -1.0), DomainError);
}
