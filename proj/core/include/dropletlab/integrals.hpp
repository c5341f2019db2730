#ifndef DROPLETLAB_INTEGRALS_HPP
#define DROPLETLAB_INTEGRALS_HPP

#include "dropletlab/model.hpp"
#include "dropletlab/quadrature.hpp"

namespace dropletlab {

/// Mutual Riesz energy D(B1, B2) of two ball droplets under the kernel
/// |x - y|^{-s}.
///
/// adaptive_1d reduces the double integral through the two-radius overlap
/// volume and requires disjoint balls; monte_carlo samples uniformly in
/// each ball (any placement, s < d) and reports the standard error;
/// far_field delegates to far_field_cross_energy. Argument order is
/// canonicalized, so the result is exactly symmetric in (b1, b2).
QuadratureResult riesz_cross_energy(const BallDroplet& b1, const BallDroplet& b2,
                                    const ModelParams& params,
                                    QuadMethod method = QuadMethod::adaptive_1d,
                                    const IntegralOptions& opts = {});

/// Point-mass approximation m1 m2 / R^s of the mutual Riesz energy of two
/// balls at center distance R, with a conservative computable bound
/// C R^{-s-1}, C = 2 s 2^{s-1} (r1 + r2) m1 m2, as the error estimate.
QuadratureResult far_field_cross_energy(double m1, double m2, double R,
                                        const ModelParams& params);

/// Confinement integral V(B) = \int_B |x|^{-p} dx (the attraction weight Z
/// is not applied). Origin-centered balls use the closed form
/// d omega_d r^{d-p} / (d-p); off-center balls integrate over radial
/// shells, with the |c| < r singular-but-integrable case handled by
/// splitting off the fully-covered shells in closed form. far_field
/// returns mass / |c|^p with the analytic bound as error estimate.
QuadratureResult confinement_integral(const BallDroplet& b, const ModelParams& params,
                                      QuadMethod method = QuadMethod::adaptive_1d,
                                      const IntegralOptions& opts = {});

/// Closed form of the origin-centered confinement integral.
double confinement_closed_form(double radius, const ModelParams& params);

/// Radial-shell quadrature path of the confinement integral, exposed so
/// that the closed form can be checked against an actual quadrature (also
/// valid at center_dist = 0).
QuadOutcome confinement_shell_quadrature(double center_dist, double radius,
                                         const ModelParams& params, double rel_tol);

} // namespace dropletlab

#endif
