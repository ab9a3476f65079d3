#include "potentia/uniqueness.hpp"
#include "potentia/parallel.hpp"
#include "potentia/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace potentia {

namespace {

constexpr int max_rejections = 100000;

std::mt19937_64 counter_engine(std::uint64_t seed, std::uint64_t index, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
    return std::mt19937_64(seq);
}

Point uniform_in_box(const Box& box, std::mt19937_64& engine)
{
    Point y(box.dimension());
    for (int k = 0; k < box.dimension(); ++k)
        y(k) = std::uniform_real_distribution<double>(box.lower(k), box.upper(k))(engine);
    return y;
}

bool is_atom(const DiscreteCharge& c, const Point& y)
{
    return std::any_of(c.atoms().begin(), c.atoms().end(), [&](const auto& a) { return a.location == y; });
}

// Numerical Weyl residual: the black-box value minus the potential of the charge.
double harmonic_branch(const TestFunction& f, const Point& y)
{
    return f(y) - potential_direct(f.charge(), y).value;
}

template <typename Sampler, typename Measure>
double max_over_samples(int samples, Sampler&& sampler, Measure&& measure)
{
    std::vector<double> values(static_cast<std::size_t>(samples));
    parallel_for(samples, [&](std::ptrdiff_t i) { values[i] = measure(sampler(static_cast<std::uint64_t>(i))); });
    double worst = 0;
    for (double v : values)
        worst = std::max(worst, v);
    return worst;
}

} // namespace

UniquenessInstance::UniquenessInstance(TestFunction p, TestFunction q, ClosedBall exceptional, Box window)
    : p_(std::move(p)), q_(std::move(q)), exceptional_(std::move(exceptional)), window_(std::move(window))
{
    const int d = p_.dimension();
    if (q_.dimension() != d || exceptional_.center.size() != d || window_.dimension() != d)
        throw DomainError("UniquenessInstance: dimension mismatch");
    if (!(exceptional_.radius > 0))
        throw DomainError("UniquenessInstance: S must have positive radius");
    for (const auto* charge : {&p_.charge(), &q_.charge()})
        for (const auto& a : charge->atoms())
            if (!exceptional_.contains(a.location))
                throw DomainError("UniquenessInstance: charge support must lie in S");
    for (int k = 0; k < d; ++k) {
        if (!(exceptional_.center(k) - exceptional_.radius > window_.lower(k)
              && exceptional_.center(k) + exceptional_.radius < window_.upper(k)))
            throw DomainError("UniquenessInstance: S must lie inside the window O");
    }
}

Point UniquenessInstance::exterior_sample(std::uint64_t seed, std::uint64_t index) const
{
    auto engine = counter_engine(seed, index, 0);
    for (int attempt = 0; attempt < max_rejections; ++attempt) {
        Point y = uniform_in_box(window_, engine);
        if (!exceptional_.contains(y))
            return y;
    }
    throw DomainError("exterior_sample: O \\ S is too thin to sample");
}

Point UniquenessInstance::interior_sample(std::uint64_t seed, std::uint64_t index) const
{
    auto engine = counter_engine(seed, index, 1);
    for (int attempt = 0; attempt < max_rejections; ++attempt) {
        Point y = uniform_in_box(window_, engine);
        if (!is_atom(p_.charge(), y) && !is_atom(q_.charge(), y))
            return y;
    }
    throw DomainError("interior_sample: no point off the atoms found");
}

double default_uniqueness_tolerance(int dimension)
{
    switch (dimension) {
    case 1:
        return 1e-12;
    case 2:
        return 1e-8;
    default:
        return 1e-5;
    }
}

double verify_hypothesis(const UniquenessInstance& inst, int samples, std::uint64_t seed)
{
    if (samples < 1)
        throw DomainError("verify_hypothesis: need at least one sample");
    return max_over_samples(
        samples, [&](std::uint64_t i) { return inst.exterior_sample(seed, i); },
        [&](const Point& y) { return std::abs(inst.p()(y) - inst.q()(y)); });
}

UniquenessReport check_conclusions(const UniquenessInstance& inst, int samples, std::uint64_t seed, double tol)
{
    UniquenessReport report;
    report.tolerance = tol;
    report.mass_p = total_mass(inst.p().riesz_measure());
    report.mass_q = total_mass(inst.q().riesz_measure());
    report.mass_gap = std::abs(report.mass_q - report.mass_p);
    report.equality_defect = verify_hypothesis(inst, samples, seed);
    report.hypothesis_ok = report.equality_defect <= tol;

    report.potential_defect = max_over_samples(
        samples, [&](std::uint64_t i) { return inst.exterior_sample(seed, i); },
        [&](const Point& y) {
            return std::abs(potential_direct(inst.p().charge(), y).value
                            - potential_direct(inst.q().charge(), y).value);
        });
    report.H_defect = max_over_samples(
        samples, [&](std::uint64_t i) { return inst.interior_sample(seed, i); },
        [&](const Point& y) { return std::abs(harmonic_branch(inst.p(), y) - harmonic_branch(inst.q(), y)); });

    report.pass = report.hypothesis_ok && report.mass_gap <= tol && report.potential_defect <= tol
        && report.H_defect <= tol;
    return report;
}

RecoveredHarmonic recover_common_H(const UniquenessInstance& inst, const Box& box, double h,
                                   const HarmonicPolynomial* planted)
{
    WeylResidual from_p = weyl_residual(inst.p(), box, h);
    const WeylResidual from_q = weyl_residual(inst.q(), box, h);

    RecoveredHarmonic out{std::move(from_p.residual), 0.0, from_p.defect, std::nullopt};
    for (std::size_t i = 0; i < out.grid.size(); ++i)
        out.branch_gap = std::max(out.branch_gap, std::abs(out.grid.value(i) - from_q.residual.value(i)));
    if (planted) {
        double worst = 0;
        for (std::size_t i = 0; i < out.grid.size(); ++i)
            worst = std::max(worst, std::abs(out.grid.value(i) - (*planted)(out.grid.node(i))));
        out.planted_deviation = worst;
    }
    return out;
}

std::pair<double, double> line_constant_ends(const UniquenessInstance& inst)
{
    if (inst.dimension() != 1)
        throw DomainError("line_constant_ends: only defined on the line");
    const Point left = inst.window().lower;
    const Point right = inst.window().upper;
    return {harmonic_branch(inst.p(), left) - harmonic_branch(inst.q(), left),
            harmonic_branch(inst.p(), right) - harmonic_branch(inst.q(), right)};
}

UniquenessInstance build_shell_delta_instance(int d, double r, double mass, const Eigen::VectorXd& harmonic_coefficients,
                                              int nodes, double shell_margin)
{
    if (d < 1 || d > 3)
        throw DomainError("build_shell_delta_instance: dimension must be 1, 2 or 3");
    if (!(r > 0))
        throw DomainError("build_shell_delta_instance: radius must be positive");
    const Point center = Point::Zero(d);
    const HarmonicPolynomial harmonic(d, harmonic_coefficients);
    TestFunction p(uniform_sphere_measure<double>(d, center, r, mass, nodes), harmonic);
    TestFunction q(DiscreteCharge::dirac(center, mass), harmonic);
    const double s_radius = d == 1 ? r : (1 + shell_margin) * r;
    return UniquenessInstance(std::move(p), std::move(q), ClosedBall{center, s_radius}, Box::cube(center, 3 * r));
}

} // namespace potentia
