#include "potentia/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace potentia {

Box::Box(Point lower_corner, Point upper_corner) : lower(std::move(lower_corner)), upper(std::move(upper_corner))
{
    if (lower.size() != upper.size() || lower.size() < 1)
        throw DomainError("Box: corners must share a positive dimension");
    if (!(lower.array() < upper.array()).all())
        throw DomainError("Box: lower corner must be below the upper corner on every axis");
}

Box Box::cube(const Point& center, double half_width)
{
    return Box(center.array() - half_width, center.array() + half_width);
}

bool Box::contains(const Point& y) const
{
    return y.size() == lower.size() && (y.array() >= lower.array()).all() && (y.array() <= upper.array()).all();
}

double Box::volume() const
{
    return (upper - lower).prod();
}

bool Box::operator==(const Box& other) const
{
    return lower.size() == other.lower.size() && lower == other.lower && upper == other.upper;
}

GridFunction::GridFunction(Box box, double spacing) : box_(std::move(box)), spacing_(spacing)
{
    if (!(spacing > 0))
        throw DomainError("GridFunction: spacing must be positive");
    const int d = box_.dimension();
    if (d < 1)
        throw DomainError("GridFunction: empty box");
    extents_.resize(d);
    strides_.resize(d);
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) {
        const double span = (box_.upper(k) - box_.lower(k)) / spacing;
        extents_[k] = static_cast<int>(std::floor(span + 1e-9)) + 1;
        total *= static_cast<std::size_t>(extents_[k]);
    }
    std::size_t stride = 1;
    for (int k = d - 1; k >= 0; --k) {
        strides_[k] = stride;
        stride *= static_cast<std::size_t>(extents_[k]);
    }
    values_ = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(total));
    flags_.assign(total, node_valid);
}

std::vector<int> GridFunction::multi_index(std::size_t flat) const
{
    std::vector<int> index(extents_.size());
    for (std::size_t k = 0; k < extents_.size(); ++k) {
        index[k] = static_cast<int>(flat / strides_[k]);
        flat %= strides_[k];
    }
    return index;
}

std::size_t GridFunction::flat_index(std::span<const int> index) const
{
    std::size_t flat = 0;
    for (std::size_t k = 0; k < extents_.size(); ++k)
        flat += static_cast<std::size_t>(index[k]) * strides_[k];
    return flat;
}

Point GridFunction::node(std::size_t flat) const
{
    const auto index = multi_index(flat);
    Point y(dimension());
    for (int k = 0; k < dimension(); ++k)
        y(k) = box_.lower(k) + index[k] * spacing_;
    return y;
}

std::size_t GridFunction::valid_count() const
{
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), node_valid));
}

bool GridFunction::same_lattice(const GridFunction& other) const
{
    return box_ == other.box_ && spacing_ == other.spacing_;
}

namespace {

GridFunction combine(const GridFunction& a, const GridFunction& b, double sign)
{
    if (!a.same_lattice(b))
        throw DomainError("GridFunction: operands live on different lattices");
    GridFunction out = a;
    out.values() = a.values() + sign * b.values();
    for (std::size_t i = 0; i < out.size(); ++i)
        out.set_flag(i, a.flag(i) | b.flag(i));
    return out;
}

double surface_area(int d, double radius)
{
    const double pi = std::numbers::pi;
    switch (d) {
    case 1:
        return 2;
    case 2:
        return 2 * pi * radius;
    case 3:
        return 4 * pi * radius * radius;
    default:
        throw DomainError("surface_area: dimension must be 1, 2 or 3");
    }
}

} // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b)
{
    return combine(a, b, 1.0);
}

GridFunction operator-(const GridFunction& a, const GridFunction& b)
{
    return combine(a, b, -1.0);
}

GridFunction operator*(double factor, const GridFunction& a)
{
    GridFunction out = a;
    out.values() *= factor;
    return out;
}

GridFunction sample(const TestFunction& f, const Box& box, double h)
{
    if (box.dimension() != f.dimension())
        throw DomainError("sample: box and function differ in dimension");
    std::vector<Point> atoms;
    for (const auto& a : f.charge().atoms())
        atoms.push_back(a.location);
    return sample_function([&](const Point& y) { return f(y); }, box, h, atoms);
}

GridFunction discrete_laplacian(const GridFunction& g)
{
    const int d = g.dimension();
    for (int e : g.extents())
        if (e < 3)
            throw DomainError("discrete_laplacian: need at least 3 nodes per axis");

    const double h2 = g.spacing() * g.spacing();
    GridFunction out(g.box(), g.spacing());
    parallel_for(static_cast<std::ptrdiff_t>(g.size()), [&](std::ptrdiff_t i) {
        const auto flat = static_cast<std::size_t>(i);
        const auto index = g.multi_index(flat);
        bool complete = g.valid(flat);
        for (int k = 0; complete && k < d; ++k) {
            if (index[k] == 0 || index[k] == g.extents()[k] - 1)
                complete = false;
            else if (!g.valid(flat + g.stride(k)) || !g.valid(flat - g.stride(k)))
                complete = false;
        }
        if (!complete) {
            out.set_flag(flat, static_cast<std::uint8_t>((g.flag(flat) & node_singular) | node_invalid));
            return;
        }
        const double centre = g.value(flat);
        double sum = 0;
        for (int k = 0; k < d; ++k)
            sum += (g.value(flat + g.stride(k)) - 2 * centre + g.value(flat - g.stride(k))) / h2;
        out.value(flat) = sum;
    });
    return out;
}

double harmonicity_defect(const GridFunction& g)
{
    const GridFunction lap = discrete_laplacian(g);
    double worst = 0;
    for (std::size_t i = 0; i < lap.size(); ++i)
        if (lap.valid(i))
            worst = std::max(worst, std::abs(lap.value(i)));
    return worst;
}

double ExtractedMeasure::total() const
{
    double sum = 0;
    for (const auto& c : cells)
        sum += c.mass;
    return sum;
}

DiscreteCharge ExtractedMeasure::to_charge() const
{
    std::vector<PointCharge> atoms;
    for (const auto& c : cells)
        if (c.mass != 0)
            atoms.push_back({c.center, c.mass});
    return DiscreteCharge(dimension, std::move(atoms));
}

ExtractedMeasure riesz_measure_extract(const GridFunction& g)
{
    const GridFunction lap = discrete_laplacian(g);
    const int d = g.dimension();
    const double scale = riesz_normalization(d) * std::pow(g.spacing(), d);
    ExtractedMeasure measure;
    measure.dimension = d;
    measure.spacing = g.spacing();
    for (std::size_t i = 0; i < lap.size(); ++i)
        if (lap.valid(i))
            measure.cells.push_back({lap.node(i), scale * lap.value(i)});
    return measure;
}

namespace {

// Central-difference gradient at a node; false when the stencil is incomplete.
bool node_gradient(const GridFunction& g, std::span<const int> index, Point& grad)
{
    const int d = g.dimension();
    const std::size_t flat = g.flat_index(index);
    if (g.flag(flat) & node_singular)
        return false;
    grad.resize(d);
    for (int k = 0; k < d; ++k) {
        if (index[k] == 0 || index[k] == g.extents()[k] - 1)
            return false;
        const std::size_t up = flat + g.stride(k), down = flat - g.stride(k);
        if ((g.flag(up) & node_singular) || (g.flag(down) & node_singular))
            return false;
        grad(k) = (g.value(up) - g.value(down)) / (2 * g.spacing());
    }
    return true;
}

Point interpolated_gradient(const GridFunction& g, const Point& y)
{
    const int d = g.dimension();
    std::vector<int> base(d);
    Point frac(d);
    for (int k = 0; k < d; ++k) {
        const double s = (y(k) - g.box().lower(k)) / g.spacing();
        base[k] = std::clamp(static_cast<int>(std::floor(s)), 0, g.extents()[k] - 2);
        frac(k) = s - base[k];
    }
    Point grad = Point::Zero(d), corner_grad;
    std::vector<int> corner(d);
    for (int mask = 0; mask < (1 << d); ++mask) {
        double weight = 1;
        for (int k = 0; k < d; ++k) {
            const bool upper = (mask >> k) & 1;
            corner[k] = base[k] + (upper ? 1 : 0);
            weight *= upper ? frac(k) : 1 - frac(k);
        }
        if (!node_gradient(g, corner, corner_grad))
            throw DomainError("flux_mass: contour passes through singular or boundary nodes");
        grad += weight * corner_grad;
    }
    return grad;
}

} // namespace

double flux_mass(const GridFunction& g, const Point& center, double radius, SphereRule rule)
{
    const int d = g.dimension();
    if (center.size() != d)
        throw DomainError("flux_mass: center dimension mismatch");
    if (!(radius > 0))
        throw DomainError("flux_mass: radius must be positive");
    const auto [dirs, weights] = sphere_rule_directions<double>(d, rule);
    std::vector<double> contributions(dirs.size());
    parallel_for(static_cast<std::ptrdiff_t>(dirs.size()), [&](std::ptrdiff_t j) {
        const Point y = center + radius * dirs[j];
        if (!g.box().contains(y))
            throw DomainError("flux_mass: contour leaves the grid");
        contributions[j] = weights[j] * interpolated_gradient(g, y).dot(dirs[j]);
    });
    double flux = 0;
    for (double c : contributions)
        flux += c;
    return riesz_normalization(d) * surface_area(d, radius) * flux;
}

MassAccount riesz_mass_account(const GridFunction& g, const Point& center, double radius, SphereRule rule)
{
    MassAccount account;
    account.total = flux_mass(g, center, radius, rule);
    for (const auto& cell : riesz_measure_extract(g).cells)
        if ((cell.center - center).norm() < radius)
            account.regular_cells += cell.mass;
    account.singular_patch = account.total - account.regular_cells;
    return account;
}

WeylResidual weyl_residual(const TestFunction& f, const Box& box, double h)
{
    const TestFunction residual = f - TestFunction::potential_of(f.riesz_measure());
    WeylResidual out{sample(residual, box, h), 0.0};
    out.defect = harmonicity_defect(out.residual);
    return out;
}

CanonicalPair delta_subharmonic_decompose(const DiscreteCharge& w_charge)
{
    auto [plus, minus] = jordan_decomposition(w_charge);
    return {std::move(plus), std::move(minus)};
}

void write_grid_csv(std::ostream& out, const GridFunction& g)
{
    const int d = g.dimension();
    for (int k = 0; k < d; ++k)
        out << 'x' << (k + 1) << ',';
    out << "value,flag\n";
    const auto old_precision = out.precision(17);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point y = g.node(i);
        for (int k = 0; k < d; ++k)
            out << y(k) << ',';
        out << g.value(i) << ',' << static_cast<int>(g.flag(i)) << '\n';
    }
    out.precision(old_precision);
}

} // namespace potentia
