#ifndef POTENTIA_POTENTIAL_HPP
#define POTENTIA_POTENTIAL_HPP

#include "potentia/charge.hpp"
#include "potentia/kernels.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace potentia {

enum class PotentialStatus { finite, plus_infinity, minus_infinity };

std::string_view to_string(PotentialStatus status);

template <typename Scalar>
struct BasicPotentialValue {
    PotentialStatus status = PotentialStatus::finite;
    Scalar value{};

    bool finite() const { return status == PotentialStatus::finite; }

    /// The value as an extended real.
    Scalar extended() const
    {
        switch (status) {
        case PotentialStatus::plus_infinity:
            return std::numeric_limits<Scalar>::infinity();
        case PotentialStatus::minus_infinity:
            return -std::numeric_limits<Scalar>::infinity();
        default:
            return value;
        }
    }

    bool operator==(const BasicPotentialValue&) const = default;
};

using PotentialValue = BasicPotentialValue<double>;

/// pt_mu(y) = sum_i w_i K_{d-2}(x_i, y), accumulated in atom-list order.
///
/// At an atom location (d >= 2) the status is minus-infinity for a positive
/// atom and plus-infinity for a negative one; atoms are coalesced, so at most
/// one atom can sit at y.
template <typename Scalar, typename Derived>
BasicPotentialValue<Scalar> potential_direct(const BasicDiscreteCharge<Scalar>& c,
                                             const Eigen::MatrixBase<Derived>& y)
{
    const int d = c.dimension();
    if (y.size() != d)
        throw DomainError("potential_direct: target dimension mismatch");
    Scalar sum = 0;
    for (const auto& a : c.atoms()) {
        const Scalar t = (a.location - y).norm();
        if (t == Scalar(0)) {
            if (d >= 2)
                return {a.weight > Scalar(0) ? PotentialStatus::minus_infinity
                                             : PotentialStatus::plus_infinity,
                        Scalar(0)};
            continue; // K = 0 on the diagonal for d = 1
        }
        sum += a.weight * radial_kernel(d, t);
    }
    return {PotentialStatus::finite, sum};
}

/// Finite value of pt_mu(y) or an extended infinity.
template <typename Scalar, typename Derived>
Scalar potential_value(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& y)
{
    return potential_direct(c, y).extended();
}

template <typename Scalar>
struct DomIntegrals {
    Scalar minus_part; ///< int_0^1 mu-(y,t) / t^{d-1} dt
    Scalar plus_part;  ///< int_0^1 mu+(y,t) / t^{d-1} dt
};

/// The two integrals of the domain test, evaluated in closed form for atoms:
/// an atom of weight w at distance a < 1 contributes w int_a^1 t^{1-d} dt, which
/// is infinite for a = 0 and d >= 2.
template <typename Scalar, typename Derived>
DomIntegrals<Scalar> dom_integrals(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& y)
{
    const int d = c.dimension();
    if (y.size() != d)
        throw DomainError("dom_integrals: target dimension mismatch");
    DomIntegrals<Scalar> out{0, 0};
    for (const auto& a : c.atoms()) {
        const Scalar dist = (a.location - y).norm();
        if (dist >= Scalar(1))
            continue;
        Scalar tail;
        if (d == 1)
            tail = Scalar(1) - dist;
        else if (dist == Scalar(0))
            tail = std::numeric_limits<Scalar>::infinity();
        else if (d == 2)
            tail = -std::log(dist);
        else
            tail = (std::pow(dist, Scalar(2 - d)) - Scalar(1)) / Scalar(d - 2);
        Scalar& slot = a.weight > Scalar(0) ? out.plus_part : out.minus_part;
        slot += std::abs(a.weight) * tail;
    }
    return out;
}

enum class DomainStatus { in_domain, not_in_domain };

std::string_view to_string(DomainStatus status);

/// Atomic charges: y is outside the domain iff d >= 2 and some atom sits at y,
/// i.e. one of the two integrals diverges. On the line every point is inside.
template <typename Scalar, typename Derived>
DomainStatus potential_domain_status(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& y)
{
    const auto integrals = dom_integrals(c, y);
    return std::max(integrals.minus_part, integrals.plus_part) < std::numeric_limits<Scalar>::infinity()
        ? DomainStatus::in_domain
        : DomainStatus::not_in_domain;
}

/// potential_direct over many targets; element i is bitwise equal to
/// potential_direct(c, targets[i]) for any thread count.
std::vector<PotentialValue> potential_batch(const DiscreteCharge& c, std::span<const Point> targets);

/// Closed form of the potential of a positive charge on the line, valid to the right
/// of the support (mass * x - first moment) and to its left (the negative).
double potential_line_closed_form(const DiscreteCharge& c, double x);

/// Leading term M k_{d-2}(|x|) of the potential at infinity.
template <typename Scalar, typename Derived>
Scalar asymptotic_leading(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& x)
{
    const Scalar r = x.norm();
    if (r == Scalar(0))
        throw DomainError("asymptotic_leading: x must be nonzero");
    return total_mass(c) * radial_kernel(c.dimension(), r);
}

struct TailFit {
    double total_mass = 0;
    std::vector<double> radii;
    std::vector<double> errors;
    double slope = 0;
    /// All errors vanished; slope is then -inf.
    bool exact = false;
};

/// Max-over-directions deviation of pt from its leading term at each radius and
/// the least-squares slope of log(error) against log(radius).
TailFit tail_decay_exponent(const DiscreteCharge& c, std::span<const double> radii,
                            std::span<const Point> directions);

} // namespace potentia

#endif // POTENTIA_POTENTIAL_HPP
