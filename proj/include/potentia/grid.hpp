#ifndef POTENTIA_GRID_HPP
#define POTENTIA_GRID_HPP

#include "potentia/charge.hpp"
#include "potentia/parallel.hpp"
#include "potentia/test_function.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace potentia {

/// Axis-aligned window [lower, upper].
struct Box {
    Point lower;
    Point upper;

    Box() = default;
    Box(Point lower, Point upper);

    static Box cube(const Point& center, double half_width);

    int dimension() const { return static_cast<int>(lower.size()); }
    bool contains(const Point& y) const;
    double volume() const;
    bool operator==(const Box& other) const;
};

/// Node flags; a node may be both singular and invalid.
enum NodeFlag : std::uint8_t {
    node_valid = 0,
    node_singular = 1, ///< at or next to an atom, excluded from every stencil
    node_invalid = 2,  ///< no complete stencil (boundary, or a singular neighbour)
};

/// Real values on the lattice lower + h * i, i_k = 0 .. extent_k - 1, stored
/// with the last axis varying fastest.
class GridFunction {
public:
    GridFunction(Box box, double spacing);

    const Box& box() const { return box_; }
    double spacing() const { return spacing_; }
    int dimension() const { return box_.dimension(); }
    const std::vector<int>& extents() const { return extents_; }
    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

    Point node(std::size_t flat) const;
    std::vector<int> multi_index(std::size_t flat) const;
    std::size_t flat_index(std::span<const int> index) const;
    /// Flat-index offset of a unit step along `axis`.
    std::size_t stride(int axis) const { return strides_[axis]; }

    double& value(std::size_t flat) { return values_(static_cast<Eigen::Index>(flat)); }
    double value(std::size_t flat) const { return values_(static_cast<Eigen::Index>(flat)); }
    const Eigen::ArrayXd& values() const { return values_; }
    Eigen::ArrayXd& values() { return values_; }

    std::uint8_t flag(std::size_t flat) const { return flags_[flat]; }
    void set_flag(std::size_t flat, std::uint8_t flag) { flags_[flat] = flag; }
    bool valid(std::size_t flat) const { return flags_[flat] == node_valid; }
    std::size_t valid_count() const;

    bool same_lattice(const GridFunction& other) const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(double factor, const GridFunction& a);

private:
    Box box_;
    double spacing_;
    std::vector<int> extents_;
    std::vector<std::size_t> strides_;
    Eigen::ArrayXd values_;
    std::vector<std::uint8_t> flags_;
};

/// Samples an arbitrary function; nodes within distance h of any point in
/// `singular_points` are flagged singular.
template <typename Function>
GridFunction sample_function(Function&& f, const Box& box, double h, std::span<const Point> singular_points = {})
{
    GridFunction g(box, h);
    parallel_for(static_cast<std::ptrdiff_t>(g.size()), [&](std::ptrdiff_t i) {
        const Point y = g.node(static_cast<std::size_t>(i));
        bool singular = false;
        for (const auto& p : singular_points)
            if ((p - y).norm() <= h) {
                singular = true;
                break;
            }
        g.value(static_cast<std::size_t>(i)) = f(y);
        if (singular)
            g.set_flag(static_cast<std::size_t>(i), node_singular);
    });
    return g;
}

/// Exact evaluation of f at every node; nodes within h of an atom of f are
/// flagged singular.
GridFunction sample(const TestFunction& f, const Box& box, double h);

/// Sum over axes of (g(x + h e) - 2 g(x) + g(x - h e)) / h^2 on nodes whose
/// whole stencil is valid; every other node is flagged invalid and holds 0.
GridFunction discrete_laplacian(const GridFunction& g);

/// Largest |discrete Laplacian| over valid nodes (0 when there are none).
double harmonicity_defect(const GridFunction& g);

struct ExtractedCell {
    Point center;
    double mass;
};

struct ExtractedMeasure {
    int dimension = 1;
    double spacing = 0;
    std::vector<ExtractedCell> cells;

    double total() const;
    /// Cells of nonzero mass as atoms.
    DiscreteCharge to_charge() const;
};

/// Riesz measure of the sampled function: c_d * (discrete Laplacian) * h^d per
/// stencil-complete node.
ExtractedMeasure riesz_measure_extract(const GridFunction& g);

/// Mass inside a ball split into the part carried by regular cells and the
/// singular remainder. The total comes from Green's identity, c_d times the
/// flux of the finite-difference gradient through the sphere.
struct MassAccount {
    double total = 0;          ///< c_d * flux through the sphere
    double regular_cells = 0;  ///< extracted mass of valid nodes inside the ball
    double singular_patch = 0; ///< total - regular_cells
};

/// c_d times the outward flux of grad g through the sphere |y - center| = radius,
/// gradients from central differences interpolated multilinearly. `rule` sets the
/// surface quadrature for d = 2, 3.
double flux_mass(const GridFunction& g, const Point& center, double radius, SphereRule rule);
MassAccount riesz_mass_account(const GridFunction& g, const Point& center, double radius, SphereRule rule);

struct WeylResidual {
    GridFunction residual;
    double defect = 0; ///< harmonicity defect of the residual
};

/// f - pt_{Riesz measure of f}, formed on the symbolic side so the residual is
/// exactly the harmonic part of f, then sampled.
WeylResidual weyl_residual(const TestFunction& f, const Box& box, double h);

/// The canonical pair of a delta-subharmonic function w: Riesz measures
/// Delta_P = Delta_w^+ and Delta_Q = Delta_w^- of P, Q with w = P - Q.
struct CanonicalPair {
    DiscreteCharge p_charge;
    DiscreteCharge q_charge;
};

CanonicalPair delta_subharmonic_decompose(const DiscreteCharge& w_charge);

/// CSV dump: header x1,...,xd,value,flag then one row per node.
void write_grid_csv(std::ostream& out, const GridFunction& g);

} // namespace potentia

#endif // POTENTIA_GRID_HPP
