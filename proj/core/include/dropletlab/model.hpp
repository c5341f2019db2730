#ifndef DROPLETLAB_MODEL_HPP
#define DROPLETLAB_MODEL_HPP

#include <vector>

#include "dropletlab/special.hpp"

namespace dropletlab {

inline constexpr double kDefaultQuadTol = 1e-8;

/// Model parameters: spatial dimension d, Riesz repulsion exponent s,
/// confinement exponent p, attraction weight Z and total mass M.
/// Valid iff d >= 2, 0 < p < s < d, Z >= 0, M > 0.
struct ModelParams {
    int d = 3;
    double s = 2.0;
    double p = 1.0;
    double Z = 0.0;
    double M = 1.0;

    /// Throws InvalidInput naming the violated constraint.
    void validate() const;
};

/// Radius of the ball of the given volume in R^d.
double ball_radius(double mass, int d);

/// A ball-shaped droplet: center and volume ("mass"); radius is derived.
struct BallDroplet {
    std::vector<double> center;
    double mass = 0.0;

    int dim() const { return static_cast<int>(center.size()); }
    double radius() const { return ball_radius(mass, dim()); }
    double center_norm() const;
};

/// Universal constants of the single-ball energy for a given (d, s):
/// omega_d, the Riesz self-energy gamma(d, s) of the unit ball, and the
/// derived coefficients C1 = d omega_d^{1/d} (perimeter) and
/// C2 = gamma omega_d^{-(2d-s)/d} (repulsion). `tolerance` records the
/// quadrature tolerance gamma was computed with.
struct RieszConstants {
    int d = 0;
    double s = 0.0;
    double omega_d = 0.0;
    double gamma_ds = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double tolerance = 0.0;
};

/// Cached constants for (d, s); computed once per (d, s, tolerance) and
/// safe for concurrent lookup afterwards.
const RieszConstants& riesz_constants(int d, double s, double tol = kDefaultQuadTol);

/// Riesz self-energy of the unit ball, gamma(d, s) = D(B_1, B_1), computed
/// by reducing the double integral to 1-D through the overlap volume of two
/// unit balls. Requires 0 < s < d.
double riesz_unit_ball_self_energy(int d, double s, double rel_tol = kDefaultQuadTol);

/// Perimeter of the ball of the given volume: C1 * mass^{(d-1)/d}.
double ball_perimeter(double mass, const RieszConstants& k);
double ball_perimeter(double mass, const ModelParams& params);

/// Zero-attraction energy of a single ball:
/// C1 m^{(d-1)/d} + C2 m^{(2d-s)/d}; zero at m = 0.
double single_ball_energy(double mass, const RieszConstants& k);
double single_ball_energy(double mass, const ModelParams& params);

/// Mass derivative of single_ball_energy; the scalar Lagrange multiplier a
/// ball of the given mass satisfies.
double single_ball_multiplier(double mass, const RieszConstants& k);
double single_ball_multiplier(double mass, const ModelParams& params);

/// Mass scales of the single-ball energy. `coefficient_mass` is
/// (C1/C2)^{d/(1+d-s)}; `inflection_mass` is where the second mass
/// derivative of single_ball_energy changes sign (concave below, convex
/// above).
struct MassThresholds {
    double coefficient_mass = 0.0;
    double inflection_mass = 0.0;
};

MassThresholds mass_thresholds(const RieszConstants& k);
MassThresholds mass_thresholds(const ModelParams& params);

} // namespace dropletlab

#endif
