#include "horolab/lattice2d.hpp"

#include "horolab/errors.hpp"

#include <cmath>
#include <utility>

namespace horolab {

ReducedBasis gauss_reduce(const Basis2& basis) {
    Row2 b1 = basis[0], b2 = basis[1];
    IntMatrix2 U;
    const double area = std::abs(b1[0] * b2[1] - b1[1] * b2[0]);
    if (!(area > 0.0))
        throw DomainError("degenerate lattice basis");
    if (dot(b1, b1) > dot(b2, b2)) {
        std::swap(b1, b2);
        U = IntMatrix2{0, 1, 1, 0} * U;
    }
    for (int iter = 0; iter < 10000; ++iter) {
        const double mu = std::round(dot(b1, b2) / dot(b1, b1));
        if (mu != 0.0) {
            b2 = {b2[0] - mu * b1[0], b2[1] - mu * b1[1]};
            const auto k = static_cast<long long>(mu);
            U = IntMatrix2{1, 0, -k, 1} * U;
        }
        if (dot(b2, b2) < dot(b1, b1)) {
            std::swap(b1, b2);
            U = IntMatrix2{0, 1, 1, 0} * U;
        } else {
            return {{b1, b2}, U};
        }
    }
    throw NonConvergence("Gauss reduction did not terminate", 0.0, 0.0);
}

} // namespace horolab
