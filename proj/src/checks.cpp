#include "potentia/checks.hpp"
#include "potentia/balls.hpp"
#include "potentia/grid.hpp"
#include "potentia/io.hpp"
#include "potentia/parallel.hpp"
#include "potentia/potential.hpp"
#include "potentia/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace potentia {

bool CheckReport::pass() const
{
    return std::all_of(residuals.begin(), residuals.end(),
                       [&](const auto& r) { return r.second <= tolerance; });
}

double CheckReport::max_residual() const
{
    double worst = 0;
    for (const auto& [name, value] : residuals)
        worst = std::max(worst, value);
    return worst;
}

nlohmann::ordered_json CheckReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["check"] = check;
    for (const auto& [key, value] : extra.items())
        doc[key] = value;
    doc["parameters"] = parameters;
    doc["residuals"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : residuals)
        doc["residuals"][name] = value;
    doc["tolerance"] = tolerance;
    doc["pass"] = pass();
    return doc;
}

namespace {

Point uniform_in_ball(int d, double radius, std::mt19937_64& engine)
{
    std::uniform_real_distribution<double> coord(-radius, radius);
    while (true) {
        Point y(d);
        for (int k = 0; k < d; ++k)
            y(k) = coord(engine);
        if (y.norm() < radius)
            return y;
    }
}

Point unit(std::initializer_list<double> coords)
{
    Point u(static_cast<Eigen::Index>(coords.size()));
    std::copy(coords.begin(), coords.end(), u.data());
    return u.normalized();
}

std::vector<Point> tail_directions(int d)
{
    switch (d) {
    case 1:
        return {unit({1}), unit({-1})};
    case 2: {
        std::vector<Point> dirs;
        for (int j = 0; j < 8; ++j) {
            const double a = std::numbers::pi * j / 4;
            dirs.push_back(unit({std::cos(a), std::sin(a)}));
        }
        return dirs;
    }
    default:
        return {unit({1, 0, 0}),  unit({-1, 0, 0}), unit({0, 1, 0}), unit({0, -1, 0}), unit({0, 0, 1}),
                unit({0, 0, -1}), unit({1, 1, 1}),  unit({-1, 1, -1}), unit({1, -1, 1})};
    }
}

DiscreteCharge charge_of(int d, std::initializer_list<std::pair<std::initializer_list<double>, double>> atoms)
{
    std::vector<PointCharge> list;
    for (const auto& [coords, w] : atoms) {
        Point x(d);
        std::copy(coords.begin(), coords.end(), x.data());
        list.push_back({x, w});
    }
    return DiscreteCharge(d, std::move(list));
}

} // namespace

CheckReport check_lemma2(std::uint64_t seed, int cases, int points, double tol)
{
    if (cases < 1 || points < 1)
        throw DomainError("check lemma2: cases and points must be positive");
    CheckReport report;
    report.check = "lemma2";
    report.parameters = {{"seed", seed}, {"cases", cases}, {"points", points}};
    report.tolerance = tol;

    std::mt19937_64 engine(seed);
    std::uniform_int_distribution<int> atom_count(1, 50);
    std::uniform_real_distribution<double> position(-1.0, 1.0), unit_interval(0.0, 1.0), magnitude(2.0, 100.0);
    std::vector<DiscreteCharge> charges;
    std::vector<std::vector<double>> targets;
    for (int c = 0; c < cases; ++c) {
        std::vector<PointCharge> atoms(static_cast<std::size_t>(atom_count(engine)));
        for (auto& a : atoms) {
            a.location = Point::Constant(1, position(engine));
            a.weight = 2.0 * (1.0 - unit_interval(engine)); // (0, 2]
        }
        charges.emplace_back(1, std::move(atoms));
        std::vector<double> xs(static_cast<std::size_t>(points));
        for (auto& x : xs)
            x = (unit_interval(engine) < 0.5 ? -1.0 : 1.0) * magnitude(engine);
        targets.push_back(std::move(xs));
    }

    std::vector<double> worst(static_cast<std::size_t>(cases), 0.0);
    parallel_for(cases, [&](std::ptrdiff_t c) {
        for (double x : targets[c]) {
            const double direct = potential_direct(charges[c], Point::Constant(1, x)).value;
            const double closed = potential_line_closed_form(charges[c], x);
            worst[c] = std::max(worst[c], std::abs(closed - direct) / std::abs(direct));
        }
    });
    report.residuals.emplace_back("max_relative_error", *std::max_element(worst.begin(), worst.end()));
    return report;
}

CheckReport check_asymptotics(double tol)
{
    CheckReport report;
    report.check = "asymptotics";
    report.tolerance = tol;
    const std::vector<double> radii{10, 100, 1000, 10000};
    report.parameters = {{"radii", radii}};

    struct Fixture {
        std::string name;
        DiscreteCharge charge;
    };
    const std::vector<Fixture> off_centre{
        {"d1_atom", charge_of(1, {{{1.0}, 1.0}})},
        {"d1_signed", charge_of(1, {{{0.5}, 2.0}, {{-0.3}, -1.0}, {{0.9}, 0.5}})},
        {"d2_atom", charge_of(2, {{{1.0, 0.0}, 1.0}})},
        {"d2_dipole", charge_of(2, {{{0.5, 0.2}, 1.0}, {{-0.5, -0.2}, -1.0}})},
        {"d3_atom", charge_of(3, {{{1.0, 0.0, 0.0}, 1.0}})},
        {"d3_cluster", charge_of(3, {{{0.3, -0.4, 0.2}, 2.0}, {{-0.6, 0.1, 0.5}, 1.0}, {{0.2, 0.7, -0.1}, -0.5}})},
    };
    nlohmann::ordered_json slopes = nlohmann::ordered_json::object();
    for (const auto& f : off_centre) {
        const int d = f.charge.dimension();
        const auto dirs = tail_directions(d);
        const TailFit fit = tail_decay_exponent(f.charge, radii, dirs);
        slopes[f.name] = fit.slope;
        report.residuals.emplace_back("slope_excess_" + f.name, std::max(0.0, fit.slope + (d - 1)));
    }
    report.extra["slopes"] = slopes;

    nlohmann::ordered_json exact = nlohmann::ordered_json::object();
    for (int d = 1; d <= 3; ++d) {
        const auto dirs = tail_directions(d);
        const TailFit fit = tail_decay_exponent(DiscreteCharge::dirac(Point::Zero(d), 1.0), radii, dirs);
        const std::string name = "centred_d" + std::to_string(d);
        exact[name] = fit.exact;
        report.residuals.emplace_back("leading_error_" + name,
                                      fit.exact ? 0.0 : *std::max_element(fit.errors.begin(), fit.errors.end()));
    }
    report.extra["exact_cancellation"] = exact;
    return report;
}

double default_poisson_jensen_tolerance(int d)
{
    return d == 2 ? 1e-8 : 1e-4;
}

double poisson_jensen_base_radius(int d)
{
    return d == 2 ? 0.9 : 0.85;
}

CheckReport check_poisson_jensen(int d, SphereRule rule, int cases, int points, std::uint64_t seed, double tol)
{
    if (d != 2 && d != 3)
        throw DomainError("check poisson-jensen: d must be 2 or 3");
    if (cases < 1 || points < 1)
        throw DomainError("check poisson-jensen: cases and points must be positive");
    CheckReport report;
    report.check = "poisson-jensen";
    report.parameters = {{"d", d},         {"polar", d == 3 ? rule.polar : 1}, {"azimuth", rule.azimuth},
                         {"cases", cases}, {"points", points},                 {"seed", seed}};
    report.tolerance = tol;

    const BallDomain ball(Point::Zero(d), 1.0);
    std::mt19937_64 engine(seed);
    std::uniform_int_distribution<int> atom_count(1, 3);
    std::uniform_real_distribution<double> unit_interval(0.0, 1.0), coefficient(-1.0, 1.0);
    std::vector<TestFunction> functions;
    std::vector<Point> bases;
    for (int c = 0; c < cases; ++c) {
        std::vector<PointCharge> atoms(static_cast<std::size_t>(atom_count(engine)));
        for (auto& a : atoms) {
            a.location = uniform_in_ball(d, 0.8, engine);
            a.weight = 2.0 * (1.0 - unit_interval(engine));
        }
        Eigen::VectorXd coeffs(HarmonicPolynomial::basis_size(d));
        for (Eigen::Index k = 0; k < coeffs.size(); ++k)
            coeffs(k) = coefficient(engine);
        functions.emplace_back(DiscreteCharge(d, std::move(atoms)), HarmonicPolynomial(d, coeffs));
        for (int j = 0; j < points; ++j)
            bases.push_back(uniform_in_ball(d, poisson_jensen_base_radius(d), engine));
    }

    std::vector<double> residual(bases.size());
    parallel_for(static_cast<std::ptrdiff_t>(bases.size()), [&](std::ptrdiff_t i) {
        residual[i] = poisson_jensen_residual(functions[i / points], ball, bases[i], rule);
    });
    report.residuals.emplace_back("max_residual", *std::max_element(residual.begin(), residual.end()));
    return report;
}

HarmonicPolynomial uniqueness_planted_harmonic(int d)
{
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(HarmonicPolynomial::basis_size(d));
    coeffs(0) = -2;
    coeffs(1) = 3;
    if (d >= 2)
        coeffs(coeffs.size() - 1) = 0.5;
    return HarmonicPolynomial(d, coeffs);
}

UniquenessInstance uniqueness_fixture(int d, double r, double mass, int nodes)
{
    return build_shell_delta_instance(d, r, mass, uniqueness_planted_harmonic(d).coefficients(), nodes);
}

CheckReport check_uniqueness(int d, double r, double mass, int nodes, int samples, std::uint64_t seed, double tol)
{
    CheckReport report;
    report.check = "uniqueness";
    report.parameters = {{"d", d},         {"r", r},       {"mass", mass}, {"nodes", nodes},
                         {"samples", samples}, {"seed", seed}};
    report.tolerance = tol;

    const UniquenessInstance inst = uniqueness_fixture(d, r, mass, nodes);
    const UniquenessReport result = check_conclusions(inst, samples, seed, tol);

    report.extra = report_to_json(result);
    report.extra.erase("check");
    report.extra.erase("pass");
    report.residuals = {{"mass_gap", result.mass_gap},
                        {"equality_defect", result.equality_defect},
                        {"potential_defect", result.potential_defect},
                        {"H_defect", result.H_defect}};
    return report;
}

double default_riesz_tolerance(const std::string& fixture)
{
    if (fixture == "harmonic")
        return 0.0;
    if (fixture == "quadratic")
        return 1e-12;
    return 0.05;
}

CheckReport check_riesz_extract(const std::string& fixture, double h, double tol)
{
    CheckReport report;
    report.check = "riesz-extract";
    report.parameters = {{"fixture", fixture}, {"h", h}};
    report.tolerance = tol;

    const int d = 2;
    const Box square(Point::Constant(d, -1.0), Point::Constant(d, 1.0));
    if (fixture == "harmonic") {
        double worst = 0;
        for (int k = 0; k < HarmonicPolynomial::basis_size(d); ++k) {
            Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(HarmonicPolynomial::basis_size(d));
            coeffs(k) = 1;
            const TestFunction f(DiscreteCharge(d), HarmonicPolynomial(d, coeffs));
            for (const auto& cell : riesz_measure_extract(sample(f, square, h)).cells)
                worst = std::max(worst, std::abs(cell.mass));
        }
        report.residuals.emplace_back("max_abs_cell_mass", worst);
    } else if (fixture == "quadratic") {
        const GridFunction g = sample_function([](const Point& y) { return y.squaredNorm(); }, square, h);
        const ExtractedMeasure measure = riesz_measure_extract(g);
        const double area = static_cast<double>(measure.cells.size()) * h * h;
        const double density = measure.total() / area;
        report.extra["density"] = density;
        report.residuals.emplace_back("density_error", std::abs(density - 2 / std::numbers::pi));
    } else if (fixture == "point") {
        const TestFunction f = TestFunction::potential_of(DiscreteCharge::dirac(Point::Zero(d)));
        const MassAccount account = riesz_mass_account(sample(f, square, h), Point::Zero(d), 0.75, SphereRule{1, 2048});
        report.extra["mass"] = account.total;
        report.extra["regular_cells"] = account.regular_cells;
        report.extra["singular_patch"] = account.singular_patch;
        report.residuals.emplace_back("mass_error", std::abs(account.total - 1));
    } else {
        throw DomainError("check riesz-extract: unknown fixture '" + fixture + "'");
    }
    return report;
}

} // namespace potentia
