#ifndef POTENTIA_UNIQUENESS_HPP
#define POTENTIA_UNIQUENESS_HPP

#include "potentia/grid.hpp"
#include "potentia/test_function.hpp"

#include <cstdint>
#include <optional>

namespace potentia {

/// Closed ball used as the exceptional compact set S.
struct ClosedBall {
    Point center;
    double radius = 0;

    bool contains(const Point& y) const { return (y - center).norm() <= radius; }
};

/// Two functions p, q harmonic outside a compact set, supposed to agree on O \ S.
/// Construction checks supp Delta_p u supp Delta_q in S and S inside the open
/// window O.
class UniquenessInstance {
public:
    UniquenessInstance(TestFunction p, TestFunction q, ClosedBall exceptional, Box window);

    int dimension() const { return p_.dimension(); }
    const TestFunction& p() const { return p_; }
    const TestFunction& q() const { return q_; }
    const ClosedBall& exceptional_set() const { return exceptional_; }
    const Box& window() const { return window_; }

    /// Seeded point of O \ S; identical for a given (seed, index) whatever the
    /// evaluation order.
    Point exterior_sample(std::uint64_t seed, std::uint64_t index) const;
    /// Seeded point of O off the atoms of both charges.
    Point interior_sample(std::uint64_t seed, std::uint64_t index) const;

private:
    TestFunction p_;
    TestFunction q_;
    ClosedBall exceptional_;
    Box window_;
};

struct UniquenessReport {
    double mass_p = 0;
    double mass_q = 0;
    /// |Delta_q(O) - Delta_p(O)|, the constant b of the d <= 2 arguments.
    double mass_gap = 0;
    /// max |p - q| on O \ S (the hypothesis defect)
    double equality_defect = 0;
    /// max |pt_{Delta_p} - pt_{Delta_q}| on O \ S
    double potential_defect = 0;
    /// max |(p - pt_{Delta_p}) - (q - pt_{Delta_q})| on O
    double H_defect = 0;
    double tolerance = 0;
    bool hypothesis_ok = false;
    bool pass = false;
};

/// Per-dimension default tolerance matched to the shell fixture quadrature.
double default_uniqueness_tolerance(int dimension);

/// max |p(y) - q(y)| over `samples` seeded points of O \ S.
double verify_hypothesis(const UniquenessInstance& inst, int samples, std::uint64_t seed);

/// Mass, potential and harmonic-part conclusions. `pass` is only ever set when
/// the hypothesis holds within `tol`.
UniquenessReport check_conclusions(const UniquenessInstance& inst, int samples, std::uint64_t seed, double tol);

struct RecoveredHarmonic {
    GridFunction grid;         ///< p - pt_{Delta_p} on the lattice
    double branch_gap = 0;     ///< max |(p - pt_{Delta_p}) - (q - pt_{Delta_q})| over nodes
    double harmonicity_defect = 0;
    std::optional<double> planted_deviation;
};

/// The common harmonic part H of p = pt_{Delta_p} + H, q = pt_{Delta_q} + H on a
/// lattice. With `planted`, also the deviation from a known H.
RecoveredHarmonic recover_common_H(const UniquenessInstance& inst, const Box& box, double h,
                                   const HarmonicPolynomial* planted = nullptr);

/// For d = 1: the difference (p - pt_{Delta_p}) - (q - pt_{Delta_q}) at the two
/// ends of the window. Both must vanish, the argument that the additive constant
/// between the affine parts is zero.
std::pair<double, double> line_constant_ends(const UniquenessInstance& inst);

/// p = pt_{uniform sphere of radius r and mass m} + H and q = pt_{m delta_0} + H.
/// S is the closed ball of radius (1 + shell_margin) r, with no margin on the
/// line where the two potentials agree exactly from |x| = r on; O is the cube of
/// half-width 3r.
UniquenessInstance build_shell_delta_instance(int d, double r, double mass, const Eigen::VectorXd& harmonic_coefficients,
                                              int nodes, double shell_margin = 0.25);

} // namespace potentia

#endif // POTENTIA_UNIQUENESS_HPP
