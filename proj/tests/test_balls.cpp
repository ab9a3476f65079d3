#include "potentia/balls.hpp"
#include "potentia/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace potentia;

namespace {

Point vec(std::initializer_list<double> xs)
{
    Point p(static_cast<Eigen::Index>(xs.size()));
    std::copy(xs.begin(), xs.end(), p.data());
    return p;
}

// Uniform point in the ball of radius r around the origin.
Point random_in_ball(int d, double r, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-r, r);
    for (;;) {
        Point y = Point::NullaryExpr(d, [&] { return u(rng); });
        if (y.norm() < r)
            return y;
    }
}

const BallDomain unit_disk(Point::Zero(2), 1.0);
const BallDomain unit_ball(Point::Zero(3), 1.0);

} // namespace

TEST_CASE("ball construction")
{
    CHECK(unit_disk.surface_area() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK(BallDomain(Point::Zero(3), 2.0).surface_area() == doctest::Approx(16 * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(BallDomain(Point::Zero(1), 1.0), DomainError);
    CHECK_THROWS_AS(BallDomain(Point::Zero(2), 0.0), DomainError);
}

TEST_CASE("Poisson kernel values")
{
    CHECK(poisson_kernel(unit_disk, vec({0, 0}), vec({0, 1})) == doctest::Approx(1 / (2 * std::numbers::pi)).epsilon(1e-15));
    const BallDomain big(vec({1, 1, 1}), 2.0);
    CHECK(poisson_kernel(big, vec({1, 1, 1}), vec({1, 1, 3})) == doctest::Approx(1 / big.surface_area()).epsilon(1e-15));

    CHECK(poisson_kernel(unit_disk, vec({0.5, 0}), vec({1, 0})) == doctest::Approx(3 / (2 * std::numbers::pi)).epsilon(1e-15));

    // the 512-node trapezoid integral of the kernel is 1
    double sum = 0;
    for (int j = 0; j < 512; ++j) {
        const double t = 2 * std::numbers::pi * j / 512;
        sum += poisson_kernel(unit_disk, vec({0.5, 0}), vec({std::cos(t), std::sin(t)})) * 2 * std::numbers::pi / 512;
    }
    CHECK(std::abs(sum - 1) <= 1e-12);

    // unnormalized surface integral over a ball of radius 2
    const auto [dirs, weights] = sphere_rule_directions<double>(3, SphereRule{32, 64});
    double total = 0;
    for (std::size_t j = 0; j < dirs.size(); ++j)
        total += poisson_kernel(big, vec({1.5, 0.5, 1.2}), big.center() + 2.0 * dirs[j]) * big.surface_area() * weights[j];
    CHECK(std::abs(total - 1) <= 1e-10);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Point x = random_in_ball(2, 0.999, rng);
        const double t = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
        CHECK(poisson_kernel(unit_disk, x, vec({std::cos(t), std::sin(t)})) > 0);
    }

    CHECK_THROWS_AS(poisson_kernel(unit_disk, vec({1, 0}), vec({1, 0})), DomainError);
    CHECK_THROWS_AS(poisson_kernel(unit_disk, vec({0, 0}), vec({0.5, 0})), DomainError);
}

TEST_CASE("harmonic measure")
{
    const HarmonicMeasure centre = harmonic_measure(unit_disk, vec({0, 0}), 64);
    const DiscreteCharge uniform = uniform_sphere_measure(2, vec({0, 0}), 1.0, 1.0, 64);
    REQUIRE(centre.quadrature.size() == uniform.size());
    for (std::size_t i = 0; i < uniform.size(); ++i) {
        CHECK((centre.quadrature.atoms()[i].location - uniform.atoms()[i].location).norm() <= 1e-15);
        CHECK(centre.quadrature.atoms()[i].weight == doctest::Approx(1.0 / 64).epsilon(1e-14));
    }

    const HarmonicMeasure omega = harmonic_measure(unit_disk, vec({0.5, 0}), 512);
    CHECK(total_mass(omega.quadrature) == 1.0);
    CHECK(std::abs(omega.integrate([](const Point& y) { return y(0); }) - 0.5) <= 1e-10);

    const HarmonicMeasure omega3 = harmonic_measure(unit_ball, vec({0.2, -0.3, 0.1}), 2048);
    CHECK(omega3.rule.polar == 32);
    CHECK(omega3.rule.azimuth == 64);
    CHECK(total_mass(omega3.quadrature) == 1.0);

    CHECK_THROWS_AS(harmonic_measure(unit_disk, vec({1, 0}), 64), DomainError);
    CHECK_THROWS_AS(harmonic_measure(unit_disk, vec({0, 0}), 3), DomainError);
}

TEST_CASE("harmonic measure reproduces harmonic polynomials")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coef(-1, 1);
    for (int d : {2, 3}) {
        const BallDomain ball(Point::Zero(d), 1.0);
        const SphereRule rule = d == 2 ? SphereRule{1, 512} : SphereRule{32, 64};
        for (int trial = 0; trial < 10; ++trial) {
            const HarmonicPolynomial h(d, Eigen::VectorXd::NullaryExpr(HarmonicPolynomial::basis_size(d),
                                                                       [&] { return coef(rng); }));
            const Point x = random_in_ball(d, 0.7, rng);
            const HarmonicMeasure omega = harmonic_measure(ball, x, rule);
            CHECK(std::abs(omega.integrate(h) - h(x)) <= (d == 2 ? 1e-10 : 1e-6));
        }
    }
}

TEST_CASE("Green's function values")
{
    CHECK(std::abs(green_function(unit_disk, vec({0.5, 0}), vec({0, 0}), 512) - std::log(2.0)) <= 1e-9);
    CHECK(std::abs(green_function(unit_ball, vec({0.5, 0, 0}), vec({0, 0, 0}), SphereRule{32, 64}) - 1.0) <= 1e-6);
    CHECK(green_function(unit_disk, vec({0.3, 0.1}), vec({0.3, 0.1}), 512) == std::numeric_limits<double>::infinity());

    for (double r : {0.25, 0.5, 0.75}) {
        CHECK(std::abs(green_function(unit_disk, vec({0, r}), vec({0, 0}), 512) + std::log(r)) <= 1e-9);
        CHECK(std::abs(green_function(unit_ball, vec({0, 0, r}), vec({0, 0, 0}), 2048) - (1 / r - 1)) <= 1e-6);
    }
}

TEST_CASE("Green's function is symmetric and positive inside")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const Point x = random_in_ball(2, 0.9, rng), y = random_in_ball(2, 0.9, rng);
        const double gyx = green_function(unit_disk, y, x, 512);
        const double gxy = green_function(unit_disk, x, y, 512);
        CHECK(gyx > 0);
        CHECK(std::abs(gyx - gxy) <= 1e-8);
    }
    for (int i = 0; i < 10; ++i) {
        const Point x = random_in_ball(3, 0.6, rng), y = random_in_ball(3, 0.6, rng);
        CHECK(std::abs(green_function(unit_ball, y, x, 2048) - green_function(unit_ball, x, y, 2048)) <= 1e-5);
    }
}

TEST_CASE("Green's function vanishes outside the ball")
{
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> radius(1.1, 4);
    const HarmonicMeasure omega = harmonic_measure(unit_disk, vec({0.3, -0.2}), 512);
    for (int i = 0; i < 50; ++i) {
        const Point dir = Point::NullaryExpr(2, [&] { return n01(rng); }).normalized();
        const double g = green_function(omega, radius(rng) * dir);
        CHECK(g >= 0);
        CHECK(g <= 1e-9);
    }
    // at a boundary node
    CHECK(green_function(omega, omega.quadrature.atoms()[3].location) == 0.0);
}

TEST_CASE("Poisson-Jensen residual")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(0.1, 1), coef(-1, 1);
    for (int d : {2, 3}) {
        const BallDomain ball(Point::Zero(d), 1.0);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<PointCharge> atoms;
            for (int i = 0; i < 3; ++i)
                atoms.push_back({random_in_ball(d, 0.8, rng), w(rng)});
            // one atom outside the ball takes no part in the Green sum
            atoms.push_back({Point::Constant(d, 2.0), w(rng)});
            const TestFunction u(DiscreteCharge(d, atoms),
                                 HarmonicPolynomial(d, Eigen::VectorXd::NullaryExpr(HarmonicPolynomial::basis_size(d),
                                                                                    [&] { return coef(rng); })));
            Point x = random_in_ball(d, 0.5, rng);
            if (d == 3) // close to the sphere, where the quadrature error dominates round-off
                x = (0.8 + 0.1 * w(rng)) * x.normalized();
            if (d == 2) {
                CHECK(poisson_jensen_residual(u, ball, x, 512) <= 1e-8);
            } else {
                const double coarse = poisson_jensen_residual(u, ball, x, SphereRule{32, 64});
                const double fine = poisson_jensen_residual(u, ball, x, SphereRule{64, 128});
                CHECK(coarse <= 1e-4);
                CHECK(fine <= coarse / 4);
            }
        }
    }

    // charge outside the ball: the mean-value property
    const TestFunction outside(DiscreteCharge::dirac(vec({2, 1}), 0.7), HarmonicPolynomial::saddle(2, 1, 1.0));
    CHECK(poisson_jensen_residual(outside, unit_disk, vec({0.3, -0.4}), 512) <= 1e-10);
    // log pole at the centre: u(x) = ln 0.3, boundary mean 0, g(0, x) = -ln 0.3
    const TestFunction pole = TestFunction::potential_of(DiscreteCharge::dirac(vec({0, 0})));
    CHECK(poisson_jensen_residual(pole, unit_disk, vec({0.3, 0}), 512) <= 1e-9);

    const TestFunction on_boundary = TestFunction::potential_of(DiscreteCharge::dirac(vec({0, 1})));
    CHECK_THROWS_WITH_AS(poisson_jensen_residual(on_boundary, unit_disk, vec({0, 0}), 512),
                         doctest::Contains("boundary atom unsupported"), DomainError);
    const TestFunction at_base = TestFunction::potential_of(DiscreteCharge::dirac(vec({0.2, 0})));
    CHECK_THROWS_AS(poisson_jensen_residual(at_base, unit_disk, vec({0.2, 0}), 512), DomainError);
}
