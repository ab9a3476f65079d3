#ifndef POTENTIA_QUADRATURE_HPP
#define POTENTIA_QUADRATURE_HPP

#include "potentia/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace potentia {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes in increasing order.
template <typename Scalar = double>
std::pair<VectorX<Scalar>, VectorX<Scalar>> gauss_legendre(int n)
{
    if (n < 1)
        throw DomainError("gauss_legendre: need at least one node");
    VectorX<Scalar> nodes(n), weights(n);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P_n'(x)
            Scalar p0 = 1, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Scalar dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4))
                break;
        }
        // refresh the derivative at the converged node
        Scalar p0 = 1, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
        nodes(i) = -x;
        nodes(n - 1 - i) = x;
        weights(i) = w;
        weights(n - 1 - i) = w;
    }
    if (n % 2 == 1)
        nodes(n / 2) = 0;
    return {nodes, weights};
}

/// Product rule on the 2-sphere: Gauss-Legendre in cos(polar angle) times a
/// uniform grid in azimuth. For circles only `azimuth` is used.
struct SphereRule {
    int polar = 1;
    int azimuth = 1;

    int size() const { return polar * azimuth; }

    /// Splits a node budget n as polar = round(sqrt(n/2)), azimuth = n / polar,
    /// so 2048 becomes 32 x 64.
    static SphereRule from_budget(int nodes)
    {
        if (nodes < 1)
            throw DomainError("SphereRule: node budget must be positive");
        const int polar = std::max(1, static_cast<int>(std::lround(std::sqrt(nodes / 2.0))));
        return {polar, std::max(1, nodes / polar)};
    }

    SphereRule refined() const { return {2 * polar, 2 * azimuth}; }
};

} // namespace potentia

#endif // POTENTIA_QUADRATURE_HPP
