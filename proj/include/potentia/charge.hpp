#ifndef POTENTIA_CHARGE_HPP
#define POTENTIA_CHARGE_HPP

#include "potentia/kernels.hpp"
#include "potentia/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

namespace potentia {

template <typename Scalar>
struct BasicPointCharge {
    VectorX<Scalar> location;
    Scalar weight{};

    bool operator==(const BasicPointCharge& other) const
    {
        return weight == other.weight && location.size() == other.location.size()
            && location == other.location;
    }
};

/// Finite signed atomic measure on R^d.
///
/// Construction coalesces atoms sharing a location (exact coordinate equality),
/// drops zero weights and keeps the remaining atoms in order of first
/// occurrence. Immutable afterwards.
template <typename Scalar>
class BasicDiscreteCharge {
public:
    using Atom = BasicPointCharge<Scalar>;

    explicit BasicDiscreteCharge(int dimension = 1) : dimension_(dimension)
    {
        if (dimension < 1)
            throw DomainError("DiscreteCharge: dimension must be >= 1");
    }

    BasicDiscreteCharge(int dimension, std::vector<Atom> atoms) : BasicDiscreteCharge(dimension)
    {
        for (const auto& a : atoms) {
            if (a.location.size() != dimension)
                throw DomainError("DiscreteCharge: atom coordinate count differs from dimension");
            if (!a.location.allFinite() || !std::isfinite(a.weight))
                throw DomainError("DiscreteCharge: atoms must be finite");
        }
        atoms_ = coalesce(std::move(atoms));
    }

    static BasicDiscreteCharge dirac(const VectorX<Scalar>& at, Scalar weight = Scalar(1))
    {
        return BasicDiscreteCharge(static_cast<int>(at.size()), {Atom{at, weight}});
    }

    int dimension() const { return dimension_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    bool operator==(const BasicDiscreteCharge& other) const
    {
        return dimension_ == other.dimension_ && atoms_ == other.atoms_;
    }

    friend BasicDiscreteCharge operator+(const BasicDiscreteCharge& a, const BasicDiscreteCharge& b)
    {
        check_same_dimension(a, b);
        std::vector<Atom> atoms = a.atoms_;
        atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
        return BasicDiscreteCharge(a.dimension_, std::move(atoms));
    }

    friend BasicDiscreteCharge operator*(Scalar factor, const BasicDiscreteCharge& c)
    {
        std::vector<Atom> atoms = c.atoms_;
        for (auto& a : atoms)
            a.weight *= factor;
        return BasicDiscreteCharge(c.dimension_, std::move(atoms));
    }

    friend BasicDiscreteCharge operator-(const BasicDiscreteCharge& c) { return Scalar(-1) * c; }

    friend BasicDiscreteCharge operator-(const BasicDiscreteCharge& a, const BasicDiscreteCharge& b)
    {
        return a + (-b);
    }

private:
    static void check_same_dimension(const BasicDiscreteCharge& a, const BasicDiscreteCharge& b)
    {
        if (a.dimension_ != b.dimension_)
            throw DomainError("DiscreteCharge: dimension mismatch");
    }

    static bool lexicographic_less(const VectorX<Scalar>& a, const VectorX<Scalar>& b)
    {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a(i) < b(i))
                return true;
            if (b(i) < a(i))
                return false;
        }
        return false;
    }

    static std::vector<Atom> coalesce(std::vector<Atom> atoms)
    {
        std::vector<std::size_t> order(atoms.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return lexicographic_less(atoms[i].location, atoms[j].location);
        });

        // merge runs of equal locations into the first occurrence
        std::vector<char> keep(atoms.size(), 0);
        for (std::size_t r = 0; r < order.size();) {
            const std::size_t head = order[r];
            std::size_t s = r + 1;
            while (s < order.size() && atoms[order[s]].location == atoms[head].location) {
                atoms[head].weight += atoms[order[s]].weight;
                ++s;
            }
            keep[head] = atoms[head].weight != Scalar(0);
            r = s;
        }

        std::vector<Atom> out;
        out.reserve(atoms.size());
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (keep[i])
                out.push_back(std::move(atoms[i]));
        return out;
    }

    int dimension_;
    std::vector<Atom> atoms_;
};

using PointCharge = BasicPointCharge<double>;
using DiscreteCharge = BasicDiscreteCharge<double>;

template <typename Scalar>
struct JordanPair {
    BasicDiscreteCharge<Scalar> plus;
    BasicDiscreteCharge<Scalar> minus;
};

/// mu+ = sup{0, mu}, mu- = (-mu)+; both positive, mutually singular.
template <typename Scalar>
JordanPair<Scalar> jordan_decomposition(const BasicDiscreteCharge<Scalar>& c)
{
    std::vector<BasicPointCharge<Scalar>> plus, minus;
    for (const auto& a : c.atoms()) {
        if (a.weight > Scalar(0))
            plus.push_back(a);
        else
            minus.push_back({a.location, -a.weight});
    }
    return {BasicDiscreteCharge<Scalar>(c.dimension(), std::move(plus)),
            BasicDiscreteCharge<Scalar>(c.dimension(), std::move(minus))};
}

template <typename Scalar>
Scalar total_mass(const BasicDiscreteCharge<Scalar>& c)
{
    Scalar sum = 0;
    for (const auto& a : c.atoms())
        sum += a.weight;
    return sum;
}

template <typename Scalar>
Scalar total_variation_mass(const BasicDiscreteCharge<Scalar>& c)
{
    Scalar sum = 0;
    for (const auto& a : c.atoms())
        sum += std::abs(a.weight);
    return sum;
}

/// mu(x, t) = mu(closed ball B(x, t)).
template <typename Scalar, typename Derived>
Scalar ball_mass(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& x, Scalar t)
{
    if (t < Scalar(0))
        throw DomainError("ball_mass: radius must be non-negative");
    Scalar sum = 0;
    for (const auto& a : c.atoms())
        if ((a.location - x).norm() <= t)
            sum += a.weight;
    return sum;
}

/// Largest distance from `origin` to an atom; 0 for the empty charge.
template <typename Scalar, typename Derived>
Scalar support_radius(const BasicDiscreteCharge<Scalar>& c, const Eigen::MatrixBase<Derived>& origin)
{
    Scalar r = 0;
    for (const auto& a : c.atoms())
        r = std::max(r, Scalar((a.location - origin).norm()));
    return r;
}

namespace detail {

// Replaces the last weight by mass - (sum of the others), so that summing the
// weights in order gives `mass` exactly (the subtraction is exact by Sterbenz
// whenever the partial sum is within a factor two of mass).
template <typename Scalar>
void close_mass(std::vector<BasicPointCharge<Scalar>>& atoms, Scalar mass)
{
    if (atoms.size() < 2)
        return;
    Scalar partial = 0;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
        partial += atoms[i].weight;
    atoms.back().weight = mass - partial;
}

} // namespace detail

/// Unit vectors and quadrature weights (summing to one) of the sphere rule in
/// dimension d: the pair {-1, +1} for d = 1, `rule.azimuth` equally spaced
/// points for d = 2 and the Gauss-Legendre x uniform product for d = 3.
template <typename Scalar = double>
std::pair<std::vector<VectorX<Scalar>>, std::vector<Scalar>> sphere_rule_directions(int d, SphereRule rule)
{
    std::vector<VectorX<Scalar>> dirs;
    std::vector<Scalar> weights;
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    if (d == 1) {
        dirs.push_back(VectorX<Scalar>::Constant(1, Scalar(-1)));
        dirs.push_back(VectorX<Scalar>::Constant(1, Scalar(1)));
        weights = {Scalar(0.5), Scalar(0.5)};
    } else if (d == 2) {
        if (rule.azimuth < 1)
            throw DomainError("sphere rule: need at least one node");
        const int n = rule.azimuth;
        for (int j = 0; j < n; ++j) {
            const Scalar angle = two_pi * Scalar(j) / Scalar(n);
            VectorX<Scalar> u(2);
            u << std::cos(angle), std::sin(angle);
            dirs.push_back(u);
            weights.push_back(Scalar(1) / Scalar(n));
        }
    } else if (d == 3) {
        if (rule.polar < 1 || rule.azimuth < 1)
            throw DomainError("sphere rule: need at least one node per axis");
        const auto [cos_nodes, gl_weights] = gauss_legendre<Scalar>(rule.polar);
        const Scalar gl_sum = gl_weights.sum();
        for (int i = 0; i < rule.polar; ++i) {
            const Scalar ct = cos_nodes(i);
            const Scalar st = std::sqrt(std::max(Scalar(0), Scalar(1) - ct * ct));
            for (int j = 0; j < rule.azimuth; ++j) {
                const Scalar angle = two_pi * Scalar(j) / Scalar(rule.azimuth);
                VectorX<Scalar> u(3);
                u << st * std::cos(angle), st * std::sin(angle), ct;
                dirs.push_back(u);
                weights.push_back(gl_weights(i) / gl_sum / Scalar(rule.azimuth));
            }
        }
    } else {
        throw DomainError("sphere rule: dimension must be 1, 2 or 3");
    }
    return {std::move(dirs), std::move(weights)};
}

template <typename Scalar>
BasicDiscreteCharge<Scalar> uniform_sphere_measure(int d, const VectorX<Scalar>& center, Scalar radius,
                                                   Scalar mass, SphereRule rule)
{
    if (center.size() != d)
        throw DomainError("uniform_sphere_measure: center dimension mismatch");
    if (!(radius > Scalar(0)))
        throw DomainError("uniform_sphere_measure: radius must be positive");
    const auto [dirs, weights] = sphere_rule_directions<Scalar>(d, rule);
    std::vector<BasicPointCharge<Scalar>> atoms;
    atoms.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        atoms.push_back({center + radius * dirs[i], mass * weights[i]});
    detail::close_mass(atoms, mass);
    return BasicDiscreteCharge<Scalar>(d, std::move(atoms));
}

/// Uniform measure of total mass `mass` on the sphere |y - center| = radius,
/// realized as a quadrature charge. For d = 3 the node budget is split by
/// SphereRule::from_budget; d = 1 always uses the two endpoints.
template <typename Scalar>
BasicDiscreteCharge<Scalar> uniform_sphere_measure(int d, const VectorX<Scalar>& center, Scalar radius,
                                                   Scalar mass, int nodes)
{
    if (nodes < 1)
        throw DomainError("uniform_sphere_measure: nodes must be >= 1");
    SphereRule rule{1, nodes};
    if (d == 1)
        rule = {1, 2};
    else if (d == 3)
        rule = SphereRule::from_budget(nodes);
    return uniform_sphere_measure<Scalar>(d, center, radius, mass, rule);
}

} // namespace potentia

#endif // POTENTIA_CHARGE_HPP
