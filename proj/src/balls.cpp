#include "potentia/balls.hpp"
#include "potentia/potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace potentia {

BallDomain::BallDomain(Point center, double radius) : center_(std::move(center)), radius_(radius)
{
    const int d = dimension();
    if (d != 2 && d != 3)
        throw DomainError("BallDomain: only d = 2 and d = 3 are supported");
    if (!(radius > 0))
        throw DomainError("BallDomain: radius must be positive");
}

double BallDomain::surface_area() const
{
    const double pi = std::numbers::pi;
    return dimension() == 2 ? 2 * pi * radius_ : 4 * pi * radius_ * radius_;
}

SphereRule boundary_rule(int dimension, int nodes)
{
    if (dimension == 3)
        return SphereRule::from_budget(nodes);
    return {1, nodes};
}

double poisson_kernel(const BallDomain& ball, const Point& x, const Point& zeta)
{
    const int d = ball.dimension();
    if (x.size() != d || zeta.size() != d)
        throw DomainError("poisson_kernel: point dimension mismatch");
    const double R = ball.radius();
    const double rx = (x - ball.center()).norm();
    if (!(rx < R))
        throw DomainError("poisson_kernel: x must lie inside the ball");
    if (std::abs((zeta - ball.center()).norm() - R) > 1e-9 * R)
        throw DomainError("poisson_kernel: zeta must lie on the boundary sphere");
    const double dist = (x - zeta).norm();
    const double unit_area = ball.surface_area() / std::pow(R, d - 1);
    return (R * R - rx * rx) / (unit_area * R * std::pow(dist, d));
}

HarmonicMeasure harmonic_measure(const BallDomain& ball, const Point& x, SphereRule rule)
{
    const int d = ball.dimension();
    if (x.size() != d || !ball.interior(x))
        throw DomainError("harmonic_measure: base point must lie inside the ball");
    const auto [dirs, weights] = sphere_rule_directions<double>(d, rule);
    if (dirs.size() < 4)
        throw DomainError("harmonic_measure: need at least 4 boundary nodes");

    std::vector<PointCharge> atoms;
    atoms.reserve(dirs.size());
    double total = 0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        const Point zeta = ball.center() + ball.radius() * dirs[j];
        const double w = poisson_kernel(ball, x, zeta) * ball.surface_area() * weights[j];
        atoms.push_back({zeta, w});
        total += w;
    }
    for (auto& a : atoms)
        a.weight /= total;
    detail::close_mass(atoms, 1.0);
    return {ball, x, DiscreteCharge(d, std::move(atoms)), rule};
}

HarmonicMeasure harmonic_measure(const BallDomain& ball, const Point& x, int n)
{
    return harmonic_measure(ball, x, boundary_rule(ball.dimension(), n));
}

double green_function(const HarmonicMeasure& omega, const Point& y)
{
    const BallDomain& ball = omega.ball;
    const int d = ball.dimension();
    if (y.size() != d)
        throw DomainError("green_function: point dimension mismatch");
    if (y == omega.base_point)
        return std::numeric_limits<double>::infinity();
    const PotentialValue pt = potential_direct(omega.quadrature, y);
    if (!pt.finite())
        return 0; // y is a boundary node
    double g = pt.value - kernel_K(d, y, omega.base_point);
    if ((y - ball.center()).norm() > ball.radius() && g < 0 && g >= -green_clamp_threshold)
        g = 0;
    return g;
}

double green_function(const BallDomain& ball, const Point& y, const Point& x, SphereRule rule)
{
    return green_function(harmonic_measure(ball, x, rule), y);
}

double green_function(const BallDomain& ball, const Point& y, const Point& x, int n)
{
    return green_function(harmonic_measure(ball, x, n), y);
}

double poisson_jensen_residual(const TestFunction& u, const BallDomain& ball, const Point& x, SphereRule rule)
{
    const int d = ball.dimension();
    if (u.dimension() != d)
        throw DomainError("poisson_jensen_residual: function and ball differ in dimension");
    const double R = ball.radius();
    for (const auto& a : u.charge().atoms()) {
        if (std::abs((a.location - ball.center()).norm() - R) <= 1e-12 * R)
            throw DomainError("poisson_jensen_residual: boundary atom unsupported");
        if (a.location == x)
            throw DomainError("poisson_jensen_residual: base point coincides with an atom");
    }

    const HarmonicMeasure omega = harmonic_measure(ball, x, rule);
    const double boundary_mean = omega.integrate([&](const Point& zeta) { return u(zeta); });
    double green_term = 0;
    for (const auto& a : u.charge().atoms())
        if ((a.location - ball.center()).norm() < R)
            green_term += a.weight * green_function(omega, a.location);
    return std::abs(u(x) - (boundary_mean - green_term));
}

double poisson_jensen_residual(const TestFunction& u, const BallDomain& ball, const Point& x, int n)
{
    return poisson_jensen_residual(u, ball, x, boundary_rule(ball.dimension(), n));
}

} // namespace potentia
