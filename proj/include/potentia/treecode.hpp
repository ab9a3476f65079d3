#ifndef POTENTIA_TREECODE_HPP
#define POTENTIA_TREECODE_HPP

#include "potentia/charge.hpp"
#include "potentia/potential.hpp"

#include <span>
#include <vector>

namespace potentia {

/// Barnes-Hut tree over the atoms of a charge, 2^d children per cell.
///
/// A cell is replaced by its monopole (total weight at the |w|-weighted
/// centroid) when diameter / distance-to-centroid < theta and its weight does
/// not nearly cancel. Leaves are always summed directly, and the directly
/// summed atoms of a target are accumulated in atom-list order, so a traversal
/// that accepts no cell reproduces potential_direct bit for bit.
class Treecode {
public:
    explicit Treecode(const DiscreteCharge& charge, int leaf_size = 16);

    PotentialValue evaluate(const Point& target, double theta) const;
    std::vector<PotentialValue> evaluate(std::span<const Point> targets, double theta) const;

    std::size_t cell_count() const { return cells_.size(); }

    /// Relative cancellation below which a cell is always opened.
    static constexpr double cancellation_ratio = 1e-3;

private:
    struct Cell {
        Point lower, upper;
        Point centroid;
        double weight = 0;
        double abs_weight = 0;
        double diameter = 0;
        std::size_t begin = 0, end = 0;
        std::vector<int> children;
    };

    int build(std::size_t begin, std::size_t end, int depth);

    DiscreteCharge charge_;
    int leaf_size_;
    std::vector<std::size_t> order_;
    std::vector<Cell> cells_;
};

/// Treecode approximation of pt_c at every target; theta must lie in (0, 1).
std::vector<PotentialValue> potential_treecode(const DiscreteCharge& c, std::span<const Point> targets,
                                               double theta);

} // namespace potentia

#endif // POTENTIA_TREECODE_HPP
