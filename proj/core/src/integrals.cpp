#include "dropletlab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dropletlab/errors.hpp"
#include "dropletlab/rng.hpp"

namespace dropletlab {

namespace {

double center_distance(const BallDroplet& a, const BallDroplet& b) {
    if (a.dim() != b.dim()) throw InvalidInput("riesz_cross_energy: dimension mismatch");
    double n2 = 0.0;
    for (std::size_t i = 0; i < a.center.size(); ++i) {
        const double diff = a.center[i] - b.center[i];
        n2 += diff * diff;
    }
    return std::sqrt(n2);
}

bool argument_order_leq(const BallDroplet& a, const BallDroplet& b) {
    if (a.mass != b.mass) return a.mass < b.mass;
    return std::lexicographical_compare(a.center.begin(), a.center.end(), b.center.begin(),
                                        b.center.end());
}

// Average of |u theta - R e1|^{-s} over directions theta on S^{d-1},
// multiplied by the sphere area sigma_{d-1}. Requires R > u >= 0. Closed
// form in d = 3; one smooth 1-D quadrature otherwise.
double kernel_shell_integral(int d, double s, double u, double R, double rel_tol) {
    if (u == 0.0) return unit_sphere_area(d) * std::pow(R, -s);
    if (d == 3) {
        // Closed form; written via atanh/expm1 because the naive
        // difference of powers cancels catastrophically for u << R.
        const double x = u / R;
        double radial;
        if (s == 2.0) {
            radial = 2.0 * std::atanh(x) / (R * u);
        } else {
            const double a = 2.0 - s;
            radial = std::pow(R, a) * std::pow(1.0 + x, a) *
                     std::expm1(-2.0 * a * std::atanh(x)) / (R * u * (s - 2.0));
        }
        return 2.0 * M_PI * radial;
    }
    const double sigma = (d - 1.0) * unit_ball_volume(d - 1);
    auto integrand = [s, u, R, d](double phi) {
        const double q = R * R + u * u - 2.0 * R * u * std::cos(phi);
        const double kernel = std::pow(q, -0.5 * s);
        return d == 2 ? kernel : kernel * std::pow(std::sin(phi), d - 2);
    };
    return sigma * integrate_adaptive(integrand, 0.0, M_PI, rel_tol).value;
}

QuadratureResult cross_energy_adaptive(const BallDroplet& b1, const BallDroplet& b2,
                                       const ModelParams& params, double rel_tol) {
    const int d = params.d;
    const double r1 = b1.radius();
    const double r2 = b2.radius();
    const double R = center_distance(b1, b2);
    if (R <= r1 + r2) {
        std::ostringstream msg;
        msg << "riesz_cross_energy: adaptive-1d requires disjoint balls "
            << "(separation " << R << " <= " << r1 + r2 << "); use monte-carlo";
        throw MethodUnsupported(msg.str());
    }

    // D(B1, B2) = \int_0^{r1+r2} V_lens(u) u^{d-1} K(u; R) du, where V_lens
    // is the two-ball overlap volume and K the kernel averaged over the
    // shell of radius u around the center separation.
    const double inner_tol = rel_tol / 16.0;
    auto integrand = [&](double u) {
        if (u <= 0.0 || u >= r1 + r2) return 0.0;
        const double lens = ball_overlap_volume(d, r1, r2, u);
        if (lens == 0.0) return 0.0;
        return lens * std::pow(u, d - 1) *
               kernel_shell_integral(d, params.s, u, R, inner_tol);
    };
    const QuadOutcome q = integrate_adaptive(integrand, 0.0, r1 + r2, rel_tol);
    QuadratureResult out;
    out.value = q.value;
    out.error_estimate = std::max(q.error, rel_tol * std::fabs(q.value));
    out.method = QuadMethod::adaptive_1d;
    return out;
}

QuadratureResult cross_energy_monte_carlo(const BallDroplet& b1, const BallDroplet& b2,
                                          const ModelParams& params,
                                          const IntegralOptions& opts) {
    const int d = params.d;
    const double r1 = b1.radius();
    const double r2 = b2.radius();
    RngStream stream(opts.seed, "integrals/riesz_cross_energy/mc");

    double sum = 0.0;
    double sum_sq = 0.0;
    const std::size_t n = opts.mc_samples;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> x = stream.uniform_in_ball(d, r1);
        const std::vector<double> y = stream.uniform_in_ball(d, r2);
        double dist2 = 0.0;
        for (int k = 0; k < d; ++k) {
            const double diff = (b1.center[k] + x[k]) - (b2.center[k] + y[k]);
            dist2 += diff * diff;
        }
        const double kernel = std::pow(dist2, -0.5 * params.s);
        sum += kernel;
        sum_sq += kernel * kernel;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
    const double scale = b1.mass * b2.mass;

    QuadratureResult out;
    out.value = scale * mean;
    out.error_estimate = scale * std::sqrt(var / static_cast<double>(n));
    out.method = QuadMethod::monte_carlo;
    return out;
}

} // namespace

QuadratureResult riesz_cross_energy(const BallDroplet& b1, const BallDroplet& b2,
                                    const ModelParams& params, QuadMethod method,
                                    const IntegralOptions& opts) {
    params.validate();
    if (!(b1.mass > 0.0) || !(b2.mass > 0.0)) {
        throw InvalidInput("riesz_cross_energy: masses must be positive");
    }
    // Canonical argument order makes the result exactly symmetric.
    const BallDroplet& lo = argument_order_leq(b1, b2) ? b1 : b2;
    const BallDroplet& hi = argument_order_leq(b1, b2) ? b2 : b1;

    switch (method) {
        case QuadMethod::adaptive_1d:
            return cross_energy_adaptive(lo, hi, params, opts.rel_tol);
        case QuadMethod::monte_carlo:
            return cross_energy_monte_carlo(lo, hi, params, opts);
        case QuadMethod::far_field:
            return far_field_cross_energy(lo.mass, hi.mass, center_distance(lo, hi), params);
    }
    throw InvalidInput("riesz_cross_energy: unknown method");
}

QuadratureResult far_field_cross_energy(double m1, double m2, double R,
                                        const ModelParams& params) {
    params.validate();
    if (!(R > 0.0)) throw InvalidInput("far_field_cross_energy: R > 0 required");
    if (!(m1 > 0.0) || !(m2 > 0.0)) {
        throw InvalidInput("far_field_cross_energy: masses must be positive");
    }
    const double r1 = ball_radius(m1, params.d);
    const double r2 = ball_radius(m2, params.d);
    QuadratureResult out;
    out.value = m1 * m2 * std::pow(R, -params.s);
    out.error_estimate = 2.0 * params.s * std::pow(2.0, params.s - 1.0) * (r1 + r2) * m1 *
                         m2 * std::pow(R, -params.s - 1.0);
    out.method = QuadMethod::far_field;
    return out;
}

double confinement_closed_form(double radius, const ModelParams& params) {
    const double d = static_cast<double>(params.d);
    return d * unit_ball_volume(params.d) * std::pow(radius, d - params.p) / (d - params.p);
}

QuadOutcome confinement_shell_quadrature(double center_dist, double radius,
                                         const ModelParams& params, double rel_tol) {
    const int d = params.d;
    const double p = params.p;
    const double c = center_dist;
    const double r = radius;
    const double sigma = unit_sphere_area(d);

    QuadOutcome out;
    double lo = std::fabs(r - c);
    if (c < r) {
        // Shells with u <= r - c are fully covered; integrate them exactly.
        out.value = sigma * std::pow(r - c, d - p) / (d - p);
    }
    if (c == 0.0) {
        // Degenerate band; quadrature over the full radial range instead of
        // the closed form, so this path stays an independent check.
        auto full = [d, p, sigma](double u) {
            return u <= 0.0 ? 0.0 : sigma * std::pow(u, d - 1.0 - p);
        };
        return integrate_singular(full, 0.0, r, rel_tol);
    }

    auto band = [d, p, c, r, sigma](double u) {
        if (u <= 0.0) return 0.0;
        // 1 - tau^2 = (1 - tau)(1 + tau) in factored form; the direct
        // expression cancels catastrophically near the band endpoints where
        // tanh-sinh samples. The two factors are divided separately so the
        // u-scale terms cancel before they can underflow.
        const double delta = u - c;
        const double one_minus = std::max(0.0, (r - delta) * (r + delta)) / (2.0 * u * c);
        const double one_plus = std::max(0.0, (u + c - r) * (u + c + r)) / (2.0 * u * c);
        const bool tau_nonneg = delta * delta + 2.0 * u * c >= r * r;
        const double frac =
            sphere_cap_fraction_x(d, std::min(one_minus * one_plus, 1.0), tau_nonneg);
        return sigma * std::pow(u, d - 1.0 - p) * frac;
    };
    const QuadOutcome q = integrate_singular(band, lo, c + r, rel_tol);
    out.value += q.value;
    out.error = q.error;
    return out;
}

QuadratureResult confinement_integral(const BallDroplet& b, const ModelParams& params,
                                      QuadMethod method, const IntegralOptions& opts) {
    params.validate();
    if (!(b.mass > 0.0)) throw InvalidInput("confinement_integral: mass > 0 required");
    const double c = b.center_norm();
    const double r = b.radius();

    QuadratureResult out;
    switch (method) {
        case QuadMethod::adaptive_1d: {
            if (c == 0.0) {
                out.value = confinement_closed_form(r, params);
                out.error_estimate = 4.0 * std::numeric_limits<double>::epsilon() * out.value;
            } else {
                const QuadOutcome q = confinement_shell_quadrature(c, r, params, opts.rel_tol);
                out.value = q.value;
                out.error_estimate = std::max(q.error, opts.rel_tol * std::fabs(q.value));
            }
            out.method = QuadMethod::adaptive_1d;
            return out;
        }
        case QuadMethod::monte_carlo: {
            RngStream stream(opts.seed, "integrals/confinement/mc");
            double sum = 0.0;
            double sum_sq = 0.0;
            const std::size_t n = opts.mc_samples;
            for (std::size_t i = 0; i < n; ++i) {
                const std::vector<double> x = stream.uniform_in_ball(params.d, r);
                double norm2 = 0.0;
                for (int k = 0; k < params.d; ++k) {
                    const double xi = b.center[k] + x[k];
                    norm2 += xi * xi;
                }
                const double kernel = std::pow(norm2, -0.5 * params.p);
                sum += kernel;
                sum_sq += kernel * kernel;
            }
            const double mean = sum / static_cast<double>(n);
            const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
            out.value = b.mass * mean;
            out.error_estimate = b.mass * std::sqrt(var / static_cast<double>(n));
            out.method = QuadMethod::monte_carlo;
            return out;
        }
        case QuadMethod::far_field: {
            if (!(c > 0.0)) {
                throw InvalidInput("confinement_integral: far-field requires |center| > 0");
            }
            out.value = b.mass * std::pow(c, -params.p);
            out.error_estimate = 2.0 * params.p * std::pow(2.0, params.p - 1.0) * r * b.mass *
                                 std::pow(c, -params.p - 1.0);
            out.method = QuadMethod::far_field;
            return out;
        }
    }
    throw InvalidInput("confinement_integral: unknown method");
}

} // namespace dropletlab
