#pragma once

#include "horolab/random.hpp"
#include "horolab/sl2.hpp"

#include <cmath>
#include <numbers>

namespace horolab::testing {

inline Sl2Matrix random_sl2(CounterRng& rng, double spread = 1.0) {
    const double u = rng.uniform(-2.0, 2.0) * spread;
    const double v = std::exp(rng.uniform(-1.5, 1.5) * spread);
    const double th = rng.uniform(0.0, 2 * std::numbers::pi);
    return iwasawa_compose({u, v, th});
}

/// Random SL(2,Z) element as a product of short words in S and u_{+-1}.
inline IntMatrix2 random_sl2z(CounterRng& rng, int length = 6) {
    IntMatrix2 g;
    for (int i = 0; i < length; ++i) {
        const long long r = rng.integer(0, 2);
        if (r == 0)
            g = g * IntMatrix2::S();
        else
            g = g * IntMatrix2::u(rng.integer(-2, 2));
    }
    return g;
}

inline double max_entry_diff(const Sl2Matrix& x, const Sl2Matrix& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

} // namespace horolab::testing
