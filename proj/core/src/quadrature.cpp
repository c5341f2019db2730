#include "dropletlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dropletlab/errors.hpp"

namespace dropletlab {

std::string to_string(QuadMethod method) {
    switch (method) {
        case QuadMethod::adaptive_1d: return "adaptive-1d";
        case QuadMethod::monte_carlo: return "monte-carlo";
        case QuadMethod::far_field: return "far-field";
    }
    return "unknown";
}

QuadMethod quad_method_from_string(const std::string& name) {
    if (name == "adaptive-1d") return QuadMethod::adaptive_1d;
    if (name == "monte-carlo") return QuadMethod::monte_carlo;
    if (name == "far-field") return QuadMethod::far_field;
    throw InvalidInput("unknown quadrature method: " + name);
}

QuadOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                               double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    QuadOutcome out;
    out.value = gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &out.error);
    return out;
}

QuadOutcome integrate_singular(const std::function<double(double)>& f, double a, double b,
                               double rel_tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    QuadOutcome out;
    double l1 = 0.0;
    out.value = integrator.integrate(f, a, b, rel_tol, &out.error, &l1);
    // tanh_sinh reports relative error against the L1 norm.
    out.error *= std::max(l1, std::fabs(out.value));
    return out;
}

} // namespace dropletlab
