#include "potentia/parallel.hpp"
#include "potentia/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
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

DiscreteCharge charge(int d, std::initializer_list<std::pair<Point, double>> atoms)
{
    std::vector<PointCharge> list;
    for (const auto& [x, w] : atoms)
        list.push_back({x, w});
    return DiscreteCharge(d, std::move(list));
}

bool bitwise_equal(const PotentialValue& a, const PotentialValue& b)
{
    return a.status == b.status && std::memcmp(&a.value, &b.value, sizeof(double)) == 0;
}

const double inf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("potential_direct examples")
{
    const PotentialValue v = potential_direct(DiscreteCharge::dirac(vec({0, 0, 0})), vec({2, 0, 0}));
    CHECK(v.status == PotentialStatus::finite);
    CHECK(v.value == -0.5);

    CHECK(potential_direct(DiscreteCharge::dirac(vec({0, 0})), vec({0, 0})).status
          == PotentialStatus::minus_infinity);
    CHECK(potential_direct(DiscreteCharge::dirac(vec({0, 0}), -2.0), vec({0, 0})).status
          == PotentialStatus::plus_infinity);
    CHECK(potential_value(DiscreteCharge::dirac(vec({0, 0})), vec({0, 0})) == -inf);

    // d = 1 is finite everywhere, the atom contributes 0 at its own location
    const DiscreteCharge line = charge(1, {{vec({0}), 1.0}, {vec({2}), 3.0}});
    CHECK(potential_direct(line, vec({0})).value == 6.0);

    const DiscreteCharge sphere = uniform_sphere_measure(3, vec({0, 0, 0}), 1.0, 1.0, SphereRule{32, 64});
    CHECK(std::abs(potential_direct(sphere, vec({2, 0, 0})).value + 0.5) <= 1e-10);

    CHECK_THROWS_AS(potential_direct(DiscreteCharge::dirac(vec({0, 0})), vec({1, 0, 0})), DomainError);
    CHECK(to_string(PotentialStatus::minus_infinity) == "minus-infinity");
}

TEST_CASE("potential is linear in the charge")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int d = 1; d <= 3; ++d) {
        std::vector<PointCharge> a, b;
        for (int i = 0; i < 20; ++i) {
            a.push_back({Point::NullaryExpr(d, [&] { return u(rng); }), u(rng)});
            b.push_back({Point::NullaryExpr(d, [&] { return u(rng); }), u(rng)});
        }
        const DiscreteCharge ca(d, a), cb(d, b);
        const Point y = Point::Constant(d, 1.7);
        CHECK(potential_value(2.0 * ca - cb, y)
              == doctest::Approx(2 * potential_value(ca, y) - potential_value(cb, y)).epsilon(1e-12));
    }
}

TEST_CASE("domain status")
{
    const DiscreteCharge delta = DiscreteCharge::dirac(vec({0, 0}));
    CHECK(potential_domain_status(delta, vec({0, 0})) == DomainStatus::not_in_domain);
    CHECK(potential_domain_status(delta, vec({1, 0})) == DomainStatus::in_domain);
    CHECK(potential_domain_status(DiscreteCharge::dirac(vec({0, 0, 0}), -1.0), vec({0, 0, 0}))
          == DomainStatus::not_in_domain);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<PointCharge> atoms;
    for (int i = 0; i < 10; ++i)
        atoms.push_back({vec({u(rng)}), u(rng)});
    const DiscreteCharge line(1, atoms);
    for (const auto& a : line.atoms())
        CHECK(potential_domain_status(line, a.location) == DomainStatus::in_domain);
    CHECK(potential_domain_status(line, vec({0.3})) == DomainStatus::in_domain);

    // the two integrals of the domain test in closed form: -ln(1/2) for an atom at distance 1/2
    const DomIntegrals<double> I = dom_integrals(delta, vec({0.5, 0}));
    CHECK(I.plus_part == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(I.minus_part == 0.0);
    CHECK(to_string(DomainStatus::not_in_domain) == "not-in-domain");
}

TEST_CASE("potential_batch")
{
    const DiscreteCharge delta = DiscreteCharge::dirac(vec({0, 0}));
    CHECK(potential_batch(delta, {}).empty());

    const std::vector<Point> targets{vec({std::numbers::e, 0}), vec({std::numbers::e * std::numbers::e, 0})};
    const auto values = potential_batch(delta, targets);
    CHECK(values[0].value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(values[1].value == doctest::Approx(2.0).epsilon(1e-15));

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<PointCharge> atoms;
    for (int i = 0; i < 300; ++i)
        atoms.push_back({vec({u(rng), u(rng)}), u(rng)});
    const DiscreteCharge c(2, atoms);
    std::vector<Point> ys;
    for (int i = 0; i < 100; ++i)
        ys.push_back(vec({u(rng), u(rng)}));
    ys.push_back(c.atoms()[5].location);
    for (int threads : {1, 4}) {
        set_thread_count(threads);
        const auto batch = potential_batch(c, ys);
        for (std::size_t i = 0; i < ys.size(); ++i)
            CHECK(bitwise_equal(batch[i], potential_direct(c, ys[i])));
    }
    set_thread_count(0);
}

TEST_CASE("closed form on the line")
{
    CHECK(potential_line_closed_form(DiscreteCharge::dirac(vec({0})), 5.0) == 5.0);
    const DiscreteCharge c = charge(1, {{vec({-1}), 1.0}, {vec({1}), 2.0}});
    CHECK(potential_line_closed_form(c, 3.0) == 8.0);
    CHECK(potential_line_closed_form(c, -2.0) == 7.0);
    // the hull endpoints are admissible
    CHECK(potential_line_closed_form(c, 1.0) == potential_value(c, vec({1.0})));
    CHECK_THROWS_AS(potential_line_closed_form(c, 0.0), DomainError);
    CHECK_THROWS_AS(potential_line_closed_form(charge(1, {{vec({0}), 1.0}, {vec({1}), -1.0}}), 5.0), DomainError);
    CHECK_THROWS_AS(potential_line_closed_form(DiscreteCharge::dirac(vec({0, 0})), 5.0), DomainError);
}

TEST_CASE("closed form agrees with direct summation on random charges")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> loc(-1, 1), weight(1e-6, 2), far(2, 100);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PointCharge> atoms;
        const int n = 1 + trial;
        for (int i = 0; i < n; ++i)
            atoms.push_back({vec({loc(rng)}), weight(rng)});
        const DiscreteCharge c(1, atoms);
        for (int i = 0; i < 20; ++i) {
            const double x = (i % 2 ? 1 : -1) * far(rng);
            const double direct = potential_value(c, vec({x}));
            CHECK(std::abs(potential_line_closed_form(c, x) - direct) <= 1e-12 * std::abs(direct));
        }
    }
}

TEST_CASE("asymptotic_leading")
{
    CHECK(asymptotic_leading(DiscreteCharge::dirac(vec({0, 0})), vec({10, 0}))
          == doctest::Approx(std::log(10.0)).epsilon(1e-15));
    CHECK(asymptotic_leading(DiscreteCharge::dirac(vec({0.1, 0.2, 0}), 3.0), vec({0, 2, 0})) == -1.5);
    const DiscreteCharge pair = charge(2, {{vec({1, 0}), 1.0}, {vec({-1, 0}), 1.0}});
    const Point x = vec({10, 0});
    CHECK(potential_value(pair, x) - asymptotic_leading(pair, x)
          == doctest::Approx(std::log(99.0) - std::log(100.0)).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_leading(pair, vec({0, 0})), DomainError);
}

TEST_CASE("tail decay exponent")
{
    const std::vector<double> radii{10, 1e2, 1e3, 1e4};

    for (int d = 1; d <= 3; ++d) {
        const Point e1 = Point::Unit(d, 0);
        const std::vector<Point> dirs{e1};
        const TailFit fit = tail_decay_exponent(DiscreteCharge::dirac(Point::Zero(d)), radii, dirs);
        CHECK(fit.exact);
        CHECK(fit.slope == -inf);
    }

    const std::vector<Point> dir2{vec({1, 0})};
    const TailFit f2 = tail_decay_exponent(DiscreteCharge::dirac(vec({1, 0})), radii, dir2);
    CHECK_FALSE(f2.exact);
    CHECK(f2.slope == doctest::Approx(-1.0).epsilon(0.05));
    REQUIRE(f2.errors.size() == 4);
    CHECK(f2.errors[0] == doctest::Approx(std::log(10.0) - std::log(9.0)).epsilon(1e-12));

    const std::vector<Point> dir3{vec({1, 0, 0})};
    const TailFit f3 = tail_decay_exponent(DiscreteCharge::dirac(vec({1, 0, 0})), radii, dir3);
    CHECK(f3.slope <= -2 + 0.1);

    const std::vector<double> short_list{10, 100, 1000};
    CHECK_THROWS_AS(tail_decay_exponent(DiscreteCharge::dirac(vec({1, 0})), short_list, dir2), DomainError);
    const std::vector<double> unsorted{10, 1000, 100, 1e4};
    CHECK_THROWS_AS(tail_decay_exponent(DiscreteCharge::dirac(vec({1, 0})), unsorted, dir2), DomainError);
    const std::vector<double> too_close{1, 10, 100, 1000};
    CHECK_THROWS_AS(tail_decay_exponent(DiscreteCharge::dirac(vec({1, 0})), too_close, dir2), DomainError);
}
