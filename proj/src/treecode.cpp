#include "potentia/treecode.hpp"
#include "potentia/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace potentia {

namespace {

constexpr int max_depth = 48;

} // namespace

Treecode::Treecode(const DiscreteCharge& charge, int leaf_size)
    : charge_(charge), leaf_size_(std::max(1, leaf_size))
{
    order_.resize(charge_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!order_.empty())
        build(0, order_.size(), 0);
}

int Treecode::build(std::size_t begin, std::size_t end, int depth)
{
    const auto& atoms = charge_.atoms();
    const int d = charge_.dimension();

    Cell cell;
    cell.begin = begin;
    cell.end = end;
    cell.lower = atoms[order_[begin]].location;
    cell.upper = cell.lower;
    cell.centroid = Point::Zero(d);
    for (std::size_t k = begin; k < end; ++k) {
        const auto& a = atoms[order_[k]];
        cell.lower = cell.lower.cwiseMin(a.location);
        cell.upper = cell.upper.cwiseMax(a.location);
        cell.weight += a.weight;
        cell.abs_weight += std::abs(a.weight);
        cell.centroid += std::abs(a.weight) * a.location;
    }
    cell.centroid /= cell.abs_weight;
    cell.diameter = (cell.upper - cell.lower).norm();

    const int index = static_cast<int>(cells_.size());
    cells_.push_back(cell);
    if (end - begin <= static_cast<std::size_t>(leaf_size_) || depth >= max_depth || cell.diameter == 0)
        return index;

    // partition into orthants around the box midpoint
    const Point mid = (cell.lower + cell.upper) / 2;
    const int orthants = 1 << d;
    auto orthant_of = [&](std::size_t atom) {
        int code = 0;
        for (int axis = 0; axis < d; ++axis)
            if (atoms[atom].location(axis) > mid(axis))
                code |= 1 << axis;
        return code;
    };
    std::stable_sort(order_.begin() + begin, order_.begin() + end,
                     [&](std::size_t a, std::size_t b) { return orthant_of(a) < orthant_of(b); });

    std::vector<int> children;
    std::size_t cursor = begin;
    for (int code = 0; code < orthants && cursor < end; ++code) {
        std::size_t stop = cursor;
        while (stop < end && orthant_of(order_[stop]) == code)
            ++stop;
        if (stop > cursor)
            children.push_back(build(cursor, stop, depth + 1));
        cursor = stop;
    }
    cells_[index].children = std::move(children);
    return index;
}

PotentialValue Treecode::evaluate(const Point& target, double theta) const
{
    if (!(theta > 0 && theta < 1))
        throw DomainError("treecode: theta must lie in (0, 1)");
    const int d = charge_.dimension();
    if (target.size() != d)
        throw DomainError("treecode: target dimension mismatch");
    if (cells_.empty())
        return {PotentialStatus::finite, 0.0};

    const auto& atoms = charge_.atoms();
    std::vector<std::size_t> near;
    double far = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const Cell& cell = cells_[stack.back()];
        stack.pop_back();
        if (cell.children.empty()) {
            for (std::size_t k = cell.begin; k < cell.end; ++k) {
                if (atoms[order_[k]].location == target)
                    return potential_direct(charge_, target);
                near.push_back(order_[k]);
            }
            continue;
        }
        const double r = (target - cell.centroid).norm();
        const bool cancelling = std::abs(cell.weight) < cancellation_ratio * cell.abs_weight;
        if (!cancelling && cell.diameter < theta * r) {
            far += cell.weight * radial_kernel(d, r);
            continue;
        }
        for (auto it = cell.children.rbegin(); it != cell.children.rend(); ++it)
            stack.push_back(*it);
    }

    std::sort(near.begin(), near.end());
    double sum = 0;
    for (std::size_t i : near)
        sum += atoms[i].weight * radial_kernel(d, (atoms[i].location - target).norm());
    return {PotentialStatus::finite, sum + far};
}

std::vector<PotentialValue> Treecode::evaluate(std::span<const Point> targets, double theta) const
{
    if (!(theta > 0 && theta < 1))
        throw DomainError("treecode: theta must lie in (0, 1)");
    std::vector<PotentialValue> out(targets.size());
    parallel_for(static_cast<std::ptrdiff_t>(targets.size()),
                 [&](std::ptrdiff_t i) { out[i] = evaluate(targets[i], theta); });
    return out;
}

std::vector<PotentialValue> potential_treecode(const DiscreteCharge& c, std::span<const Point> targets,
                                               double theta)
{
    if (!(theta > 0 && theta < 1))
        throw DomainError("treecode: theta must lie in (0, 1)");
    return Treecode(c).evaluate(targets, theta);
}

} // namespace potentia
