#ifndef DROPLETLAB_QUADRATURE_HPP
#define DROPLETLAB_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "dropletlab/rng.hpp"

namespace dropletlab {

enum class QuadMethod { adaptive_1d, monte_carlo, far_field };

std::string to_string(QuadMethod method);
QuadMethod quad_method_from_string(const std::string& name);

/// Value of a numerical integral together with an error estimate.
/// Far-field results carry the analytic bound as error_estimate.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    QuadMethod method = QuadMethod::adaptive_1d;
};

/// Per-call knobs for the integral evaluators. Tolerances are relative.
struct IntegralOptions {
    double rel_tol = 1e-8;
    std::size_t mc_samples = 2'000'000;
    RngSeed seed = 0;
};

/// Plain value/error pair returned by the 1-D engines.
struct QuadOutcome {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]; integrand must be finite on (a, b).
QuadOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                               double rel_tol);

/// tanh-sinh quadrature on [a, b]; tolerates integrable endpoint
/// singularities.
QuadOutcome integrate_singular(const std::function<double(double)>& f, double a, double b,
                               double rel_tol);

} // namespace dropletlab

#endif
