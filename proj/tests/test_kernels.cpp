#include "potentia/kernels.hpp"

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

Point random_point(int d, std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    Point p(d);
    for (int k = 0; k < d; ++k)
        p(k) = u(rng);
    return p;
}

// Central-difference gradient of y -> K(y, x), the finite-difference oracle.
Point fd_gradient(int d, const Point& y, const Point& x, double step)
{
    Point g(d);
    for (int k = 0; k < d; ++k) {
        Point up = y, down = y;
        up(k) += step;
        down(k) -= step;
        g(k) = (kernel_K(d, up, x) - kernel_K(d, down, x)) / (2 * step);
    }
    return g;
}

double fd_laplacian(int d, const Point& y, const Point& x, double h)
{
    double sum = 0;
    const double centre = kernel_K(d, y, x);
    for (int k = 0; k < d; ++k) {
        Point up = y, down = y;
        up(k) += h;
        down(k) -= h;
        sum += (kernel_K(d, up, x) - 2 * centre + kernel_K(d, down, x)) / (h * h);
    }
    return sum;
}

} // namespace

TEST_CASE("k follows the two branches")
{
    CHECK(k(0.0, 1.0) == 0.0);
    CHECK(k(1.0, 2.0) == -0.5);
    CHECK(k(-1.0, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(k(0.0, std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k(2.5, 4.0) == doctest::Approx(-std::pow(4.0, -2.5)).epsilon(1e-15));
    CHECK_THROWS_AS(k(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(k(0.0, -1.0), DomainError);
}

TEST_CASE("kernel_K values and diagonal conventions")
{
    CHECK(kernel_K(3, vec({2, 0, 0}), vec({0, 0, 0})) == -0.5);
    CHECK(kernel_K(2, vec({1, 1}), vec({1, 1})) == -std::numeric_limits<double>::infinity());
    CHECK(kernel_K(3, vec({1, 1, 1}), vec({1, 1, 1})) == -std::numeric_limits<double>::infinity());
    CHECK(kernel_K(1, vec({0.3}), vec({0.3})) == 0.0);
    CHECK(kernel_K(1, vec({-2}), vec({1})) == 3.0);
    CHECK(kernel_K(2, vec({std::numbers::e, 0}), vec({0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    // d = 4 goes through the general power branch: -|y - x|^{-2}
    CHECK(kernel_K(4, vec({2, 0, 0, 0}), vec({0, 0, 0, 0})) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK_THROWS_AS(kernel_K(3, vec({1, 0}), vec({0, 0, 0})), DomainError);
}

TEST_CASE("riesz_normalization against the gamma function")
{
    CHECK(riesz_normalization(2) == doctest::Approx(1 / (2 * std::numbers::pi)).epsilon(1e-15));
    CHECK(riesz_normalization(3) == doctest::Approx(1 / (4 * std::numbers::pi)).epsilon(1e-15));
    CHECK(riesz_normalization(1) == doctest::Approx(0.5).epsilon(1e-15));
    // independent route through std::tgamma
    for (int d = 1; d <= 12; ++d) {
        const double oracle =
            std::tgamma(d / 2.0) / (2 * std::pow(std::numbers::pi, d / 2.0) * std::max(1, d - 2));
        CHECK(riesz_normalization(d) == doctest::Approx(oracle).epsilon(1e-14));
    }
    CHECK_THROWS_AS(riesz_normalization(0), DomainError);
}

TEST_CASE("kernel_gradient examples")
{
    const Point g2 = kernel_gradient(2, vec({1, 0}), vec({0, 0}));
    CHECK(g2(0) == 1.0);
    CHECK(g2(1) == 0.0);

    const Point g3 = kernel_gradient(3, vec({2, 0, 0}), vec({0, 0, 0}));
    const Point oracle = fd_gradient(3, vec({2, 0, 0}), vec({0, 0, 0}), 1e-6);
    CHECK(std::abs(g3(0) - 0.25) <= 1e-15);
    CHECK((g3 - oracle).norm() <= 1e-8);

    CHECK(kernel_gradient(1, vec({2}), vec({0}))(0) == 1.0);
    CHECK(kernel_gradient(1, vec({-2}), vec({0}))(0) == -1.0);
    CHECK_THROWS_AS(kernel_gradient(2, vec({1, 1}), vec({1, 1})), DomainError);
}

TEST_CASE("kernel_K is symmetric bit for bit")
{
    std::mt19937_64 rng(11);
    for (int d = 1; d <= 4; ++d)
        for (int i = 0; i < 200; ++i) {
            const Point y = random_point(d, rng, 5), x = random_point(d, rng, 5);
            CHECK(kernel_K(d, y, x) == kernel_K(d, x, y));
        }
}

TEST_CASE("radial profile is strictly increasing")
{
    for (int d = 1; d <= 5; ++d) {
        double previous = radial_kernel(d, 1e-3);
        for (double t = 2e-3; t < 100; t *= 1.37) {
            const double value = radial_kernel(d, t);
            CHECK(value > previous);
            previous = value;
        }
    }
}

TEST_CASE("gradient matches central differences at moderate distances")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> radius(0.1, 10.0);
    for (int d = 1; d <= 4; ++d)
        for (int i = 0; i < 100; ++i) {
            const Point x = random_point(d, rng, 1);
            Point dir = random_point(d, rng, 1);
            if (dir.norm() == 0)
                continue;
            const double t = radius(rng);
            const Point y = x + t * dir.normalized();
            const Point exact = kernel_gradient(d, y, x);
            const Point approx = fd_gradient(d, y, x, 1e-5 * t);
            CHECK((exact - approx).norm() <= 1e-7 * exact.norm());
        }
}

TEST_CASE("finite-difference Laplacian of the kernel vanishes at second order")
{
    const Point y2 = vec({1.2, -0.7});
    const Point y3 = vec({1.1, 0.4, -0.9});
    for (const auto& [d, y] : {std::pair{2, y2}, std::pair{3, y3}}) {
        const Point x = Point::Zero(d);
        const double coarse = std::abs(fd_laplacian(d, y, x, 0.04));
        const double fine = std::abs(fd_laplacian(d, y, x, 0.02));
        CHECK(coarse > 0);
        const double order = std::log2(coarse / fine);
        CHECK(order == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("extended arithmetic refuses inf - inf")
{
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(extended_add(inf, 1.0) == inf);
    CHECK(extended_add(-inf, -inf) == -inf);
    CHECK(extended_sub(2.0, inf) == -inf);
    CHECK_THROWS_AS(extended_add(inf, -inf), DomainError);
    CHECK_THROWS_AS(extended_sub(inf, inf), DomainError);
}
