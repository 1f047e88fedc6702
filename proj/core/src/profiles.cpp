#include "horolab/profiles.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

namespace horolab {

double smooth_step5(double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    return boost::math::ibeta(6.0, 6.0, x);
}

double plateau_cutoff(double t) {
    const double a = std::abs(t);
    if (a <= 1.0)
        return 1.0;
    if (a >= 2.0)
        return 0.0;
    return smooth_step5(2.0 - a);
}

double partition_weight(double x, double N) {
    const double t = x / N;
    const double base = std::floor(t);
    double total = 0.0;
    for (int j = -1; j <= 2; ++j)
        total += bump6(t - (base + j));
    return bump6(t) / total;
}

} // namespace horolab
