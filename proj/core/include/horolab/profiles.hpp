#pragma once

#include <complex>
#include <numbers>

namespace horolab {

/// e(x) = exp(2 pi i x)
inline std::complex<double> e(double x) {
    const double t = 2 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

/// (1 - t^2)^6 on [-1, 1], zero outside. C^5 across +-1.
inline double bump6(double t) {
    if (t <= -1.0 || t >= 1.0)
        return 0.0;
    const double s = 1.0 - t * t;
    const double s2 = s * s;
    return s2 * s2 * s2;
}

/// Integral of bump6 over the line.
inline constexpr double bump6_integral = 2048.0 / 3003.0;

/// C^5 step rising from 0 at x <= 0 to 1 at x >= 1.
double smooth_step5(double x);

/// Plateau cutoff: 1 on [-1, 1], 0 outside (-2, 2), C^5.
double plateau_cutoff(double t);

/// Partition of unity with period N: sum over j of partition_weight(x - jN, N) = 1.
double partition_weight(double x, double N);

} // namespace horolab
