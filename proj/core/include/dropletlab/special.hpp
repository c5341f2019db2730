#ifndef DROPLETLAB_SPECIAL_HPP
#define DROPLETLAB_SPECIAL_HPP

namespace dropletlab {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation (modified Lentz), accurate to ~1e-14.
double regularized_incomplete_beta(double a, double b, double x);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// Surface measure of the unit sphere S^{d-1}: d * omega_d.
double unit_sphere_area(int d);

/// Cap profile J_d(tau) = integral of (1-t^2)^{(d-1)/2} over t in [tau, 1],
/// tau in [-1, 1]. The volume of the cap of a radius-r ball cut by a plane
/// at signed distance h from the center is omega_{d-1} r^d J_d(h/r).
double cap_profile(int d, double tau);

/// Volume of the intersection of two balls with radii r1, r2 at center
/// distance t, in R^d.
double ball_overlap_volume(int d, double r1, double r2, double t);

/// Fraction of the unit sphere S^{d-1} with polar angle <= acos(tau),
/// i.e. the normalized area of the cap {x . e >= tau |x|}.
double sphere_cap_fraction(int d, double tau);

/// Same fraction parametrized by 1 - tau^2 plus the sign of tau, for
/// callers that can form 1 - tau^2 without cancellation.
double sphere_cap_fraction_x(int d, double one_minus_tau_sq, bool tau_nonnegative);

} // namespace dropletlab

#endif
