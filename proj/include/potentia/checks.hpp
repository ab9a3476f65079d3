#ifndef POTENTIA_CHECKS_HPP
#define POTENTIA_CHECKS_HPP

#include "potentia/quadrature.hpp"
#include "potentia/uniqueness.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace potentia {

/// Outcome of one named check: pass iff every residual is within tolerance.
struct CheckReport {
    std::string check;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, double>> residuals;
    double tolerance = 0;
    /// Check-specific top-level fields emitted next to the generic ones.
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    bool pass() const;
    double max_residual() const;
    nlohmann::ordered_json to_json() const;
};

/// Closed form on the line against direct summation for random positive
/// charges (up to 50 atoms in [-1, 1], weights in (0, 2]) at |x| in [2, 100].
CheckReport check_lemma2(std::uint64_t seed, int cases = 100, int points = 100, double tol = 1e-12);

/// Tail decay of fixed off-centre charges in d = 1, 2, 3 over radii 10 .. 1e4;
/// residual slope + (d - 1) per charge, plus the leading-term error of centred
/// atoms.
CheckReport check_asymptotics(double tol = 0.1);

/// Poisson-Jensen residual on the unit ball for random u = pt_mu + H (up to 3
/// positive atoms in B(0, 0.8)) at random base points.
CheckReport check_poisson_jensen(int d, SphereRule rule, int cases, int points, std::uint64_t seed, double tol);
double default_poisson_jensen_tolerance(int d);
/// Radius of the ball the base points are drawn from.
double poisson_jensen_base_radius(int d);

/// Shell-versus-point-mass instance with the planted harmonic part
/// 3 x_1 - 2 (+ 0.5 (x_1^2 - x_d^2) for d >= 2) used by check_uniqueness.
UniquenessInstance uniqueness_fixture(int d, double r, double mass, int nodes);
HarmonicPolynomial uniqueness_planted_harmonic(int d);

/// Shell-versus-point-mass instance with a planted harmonic part.
CheckReport check_uniqueness(int d, double r, double mass, int nodes, int samples, std::uint64_t seed, double tol);

/// Riesz extraction fixtures on the square [-1, 1]^2:
///   "harmonic"  every harmonic basis polynomial extracts zero mass,
///   "quadratic" |x|^2 extracts density 4 c_2 = 2/pi,
///   "point"     flux accounting of pt_{delta_0} through |x| = 0.75 gives mass 1.
CheckReport check_riesz_extract(const std::string& fixture, double h, double tol);
double default_riesz_tolerance(const std::string& fixture);

} // namespace potentia

#endif // POTENTIA_CHECKS_HPP
