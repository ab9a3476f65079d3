#ifndef POTENTIA_BALLS_HPP
#define POTENTIA_BALLS_HPP

#include "potentia/charge.hpp"
#include "potentia/quadrature.hpp"
#include "potentia/test_function.hpp"

namespace potentia {

/// Open ball B(center, radius) in R^2 or R^3.
class BallDomain {
public:
    BallDomain(Point center, double radius);

    int dimension() const { return static_cast<int>(center_.size()); }
    const Point& center() const { return center_; }
    double radius() const { return radius_; }

    bool interior(const Point& x) const { return (x - center_).norm() < radius_; }
    double surface_area() const;

private:
    Point center_;
    double radius_;
};

/// Quadrature nodes used on the boundary sphere: a circle rule of `azimuth`
/// nodes for d = 2, the Gauss-Legendre x uniform product for d = 3.
SphereRule boundary_rule(int dimension, int nodes);

/// Density of harmonic measure w.r.t. surface measure,
/// (R^2 - |x - c|^2) / (sigma_1 R |x - zeta|^d) with sigma_1 the unit-sphere area.
double poisson_kernel(const BallDomain& ball, const Point& x, const Point& zeta);

/// omega_B(x, .) realized as a probability charge on the boundary sphere.
struct HarmonicMeasure {
    BallDomain ball;
    Point base_point;
    DiscreteCharge quadrature;
    SphereRule rule;

    /// int u d omega by evaluation at the nodes.
    template <typename Function>
    double integrate(Function&& u) const
    {
        double sum = 0;
        for (const auto& a : quadrature.atoms())
            sum += a.weight * u(a.location);
        return sum;
    }
};

HarmonicMeasure harmonic_measure(const BallDomain& ball, const Point& x, SphereRule rule);
/// `n` is the node count for d = 2 and a node budget for d = 3 (2048 gives 32 x 64).
HarmonicMeasure harmonic_measure(const BallDomain& ball, const Point& x, int n);

/// Green's function g_B(y, x) = pt_{omega_B(x,.) - delta_x}(y) for a prepared
/// harmonic measure at x: +inf at y = x, tiny negative noise outside the closed
/// ball clamped to 0, and 0 at a quadrature node on the boundary sphere.
double green_function(const HarmonicMeasure& omega, const Point& y);
double green_function(const BallDomain& ball, const Point& y, const Point& x, int n);
double green_function(const BallDomain& ball, const Point& y, const Point& x, SphereRule rule);

/// Threshold for clamping negative quadrature noise outside the ball.
inline constexpr double green_clamp_threshold = 1e-9;

/// |u(x) - (int u d omega_B(x,.) - sum over atoms x_i in the closed ball of
/// w_i g_B(x_i, x))| for u = pt_mu + H.
double poisson_jensen_residual(const TestFunction& u, const BallDomain& ball, const Point& x, SphereRule rule);
double poisson_jensen_residual(const TestFunction& u, const BallDomain& ball, const Point& x, int n);

} // namespace potentia

#endif // POTENTIA_BALLS_HPP
