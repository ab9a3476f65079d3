#include "potentia/potential.hpp"
#include "potentia/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace potentia {

std::string_view to_string(PotentialStatus status)
{
    switch (status) {
    case PotentialStatus::plus_infinity:
        return "plus-infinity";
    case PotentialStatus::minus_infinity:
        return "minus-infinity";
    default:
        return "finite";
    }
}

std::string_view to_string(DomainStatus status)
{
    return status == DomainStatus::in_domain ? "in-domain" : "not-in-domain";
}

std::vector<PotentialValue> potential_batch(const DiscreteCharge& c, std::span<const Point> targets)
{
    std::vector<PotentialValue> out(targets.size());
    parallel_for(static_cast<std::ptrdiff_t>(targets.size()),
                 [&](std::ptrdiff_t i) { out[i] = potential_direct(c, targets[i]); });
    return out;
}

double potential_line_closed_form(const DiscreteCharge& c, double x)
{
    if (c.dimension() != 1)
        throw DomainError("potential_line_closed_form: charge must live on the line");
    double mass = 0, moment = 0;
    double left = std::numeric_limits<double>::infinity();
    double right = -left;
    for (const auto& a : c.atoms()) {
        if (!(a.weight > 0))
            throw DomainError("potential_line_closed_form: charge must be positive");
        const double y = a.location(0);
        mass += a.weight;
        moment += a.weight * y;
        left = std::min(left, y);
        right = std::max(right, y);
    }
    if (c.empty())
        return 0;
    if (x >= right)
        return mass * x - moment;
    if (x <= left)
        return -mass * x + moment;
    throw DomainError("potential_line_closed_form: x inside the support hull, closed form inapplicable");
}

TailFit tail_decay_exponent(const DiscreteCharge& c, std::span<const double> radii,
                            std::span<const Point> directions)
{
    const int d = c.dimension();
    if (radii.size() < 4)
        throw DomainError("tail_decay_exponent: need at least four radii");
    if (directions.empty())
        throw DomainError("tail_decay_exponent: need at least one direction");
    const double min_radius = 2 * support_radius(c, Point::Zero(d));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > min_radius))
            throw DomainError("tail_decay_exponent: radii must exceed twice the support radius");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw DomainError("tail_decay_exponent: radii must be strictly increasing");
    }
    for (const auto& u : directions) {
        if (u.size() != d || std::abs(u.norm() - 1) > 1e-12)
            throw DomainError("tail_decay_exponent: directions must be unit vectors in R^d");
    }

    TailFit fit;
    fit.total_mass = total_mass(c);
    fit.radii.assign(radii.begin(), radii.end());
    for (double r : radii) {
        double worst = 0;
        for (const auto& u : directions) {
            const Point x = r * u;
            const double value = potential_direct(c, x).value;
            worst = std::max(worst, std::abs(value - asymptotic_leading(c, x)));
        }
        fit.errors.push_back(worst);
    }

    // least squares over the nonzero errors only
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (fit.errors[i] == 0)
            continue;
        const double lx = std::log(radii[i]);
        const double ly = std::log(fit.errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m == 0) {
        fit.exact = true;
        fit.slope = -std::numeric_limits<double>::infinity();
    } else if (m == 1) {
        // a single surviving point carries no slope information; treat the
        // vanished ones as decaying faster than any power
        fit.slope = -std::numeric_limits<double>::infinity();
    } else {
        fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return fit;
}

} // namespace potentia
