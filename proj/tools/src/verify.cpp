#include "verify.hpp"

#include "horolab/horolab.hpp"
#include "horolab/random.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

namespace horolab::cli {

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
}

Outcome delta_anchor() {
    MajorantParams p{3, 1, 20, 0, 1};
    const auto r = delta_m(p, 0.25, TorusMatrix{Row2{0, 0}});
    const double z3 = 1.2020569031595942, z32 = 2.6123753486854883;
    const double target = 2 * z3 * z32 * z32;
    return {r.value <= target + 1e-9 && target <= r.value + r.tail_bound + 1e-9,
            num(r.value) + " <= " + num(target) + " <= " + num(r.value + r.tail_bound)};
}

Outcome quadsum_anchor() {
    const auto s = quad_expsum_closed(make_congruence(2, 1, {1, 0, 0, 1}, {0, 0, 0, 0}));
    return {std::abs(s - std::complex<double>(-4, 0)) < 1e-12, num(s.real()) + "+" + num(s.imag()) + "i"};
}

Outcome quadsum_closed_vs_brute() {
    CounterRng rng(7);
    double worst = 0;
    for (long long q = 1; q <= 6; ++q)
        for (long long N = 1; N <= 3; ++N)
            for (int trial = 0; trial < 3; ++trial) {
                IntVec4 v;
                for (auto& x : v)
                    x = rng.integer(-5, 5);
                const auto cd = make_congruence(q, N, {1, 0, 0, 1}, v);
                worst = std::max(worst, std::abs(quad_expsum_closed(cd) - quad_expsum_bruteforce(cd)));
            }
    return {worst < 1e-8, "max diff " + num(worst)};
}

Outcome kloosterman_weil() {
    double worst = 0;
    for (long long q = 2; q <= 60; ++q)
        for (long long m = 1; m <= 3; ++m) {
            const auto k = kloosterman(m, 1, q);
            const double g = double(gcd(gcd(m, 1), q));
            worst = std::max(worst, std::abs(k) / (double(divisor_count(q)) * std::sqrt(g * double(q))));
        }
    return {worst <= 1.0 + 1e-9, "max |K|/(tau(q) sqrt(gcd q)) " + num(worst)};
}

Outcome reduction_height() {
    CounterRng rng(11);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        const Sl2Matrix M = iwasawa_compose({rng.uniform(-3, 3), std::exp(rng.uniform(-3, 3)), rng.uniform(0, 6.283)});
        const auto red = reduce_fundamental(M);
        const Sl2Matrix back = red.gamma * red.reduced;
        worst = std::max({worst, std::abs(back.a - M.a), std::abs(back.b - M.b), std::abs(back.c - M.c),
                          std::abs(back.d - M.d)});
        if (cuspidal_height(M) > frobenius_norm_sq(M) * (1 + 1e-12))
            return {false, "height exceeds |M|^2"};
    }
    return {worst < 1e-8, "max reconstruction error " + num(worst)};
}

Outcome automorphy() {
    PoincareTestFn f{2, 1, {IntRow2{1, 0}}, {2.0, 0.0}};
    CounterRng rng(13);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const Sl2Matrix M = iwasawa_compose({rng.uniform(-1, 1), std::exp(rng.uniform(-1, 1)), rng.uniform(0, 6.283)});
        const TorusMatrix xi{Row2{rng.uniform(), rng.uniform()}};
        const TorusMatrix shifted{Row2{xi[0][0] + 1, xi[0][1] - 2}};
        worst = std::max(worst, std::abs(evaluate_f(f, xi, M) - evaluate_f(f, shifted, M)));
    }
    return {worst < 1e-9, "max |f(xi+n) - f(xi)| " + num(worst)};
}

Outcome coset_count() {
    const auto ok = static_cast<long long>(sl2_mod_representatives(4).size()) == sl2_mod_order(4);
    return {ok && sl2_mod_order(4) == 48, "|SL2(Z/4)| = " + std::to_string(sl2_mod_order(4))};
}

Outcome height_gap_link() {
    CounterRng rng(17);
    for (int i = 0; i < 10; ++i) {
        const Sl2Matrix M = iwasawa_compose({rng.uniform(-1, 1), std::exp(rng.uniform(-1, 1)), rng.uniform(0, 6.283)});
        const auto g = GroupElement::from_xi(TorusMatrix{Row2{rng.uniform(), rng.uniform()}}, M);
        for (double T : {2.0, 10.0, 100.0}) {
            const double s = s_gq(g, {0}, T);
            const double r = y_g(g, T) * s * s;
            if (!(r >= 1.0 / 16 && r <= 16))
                return {false, "y_g S^2 = " + num(r) + " at T = " + num(T)};
        }
    }
    return {true, "y_g S^2 within [1/16, 16]"};
}

} // namespace

int run_verify(Table& t) {
    t.columns = {"check", "status", "detail"};
    const std::pair<const char*, std::function<Outcome()>> checks[] = {
        {"delta_anchor", delta_anchor},
        {"quadsum_anchor", quadsum_anchor},
        {"quadsum_closed_vs_brute", quadsum_closed_vs_brute},
        {"kloosterman_weil", kloosterman_weil},
        {"reduction_height", reduction_height},
        {"automorphy", automorphy},
        {"coset_count", coset_count},
        {"height_gap_link", height_gap_link},
    };
    for (const auto& [name, fn] : checks) {
        const Outcome o = fn();
        t.add({std::string(name), std::string(o.ok ? "pass" : "fail"), o.detail});
        if (!o.ok)
            return 1;
    }
    return 0;
}

} // namespace horolab::cli
