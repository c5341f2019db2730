#include "dropletlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dropletlab/errors.hpp"

namespace dropletlab {

namespace {

// Continued fraction for the incomplete beta, evaluated with the modified
// Lentz algorithm (converges quickly for x < (a+1)/(a+b+2)).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h; // converged to working precision in practice well before this
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidInput("regularized_incomplete_beta requires a > 0 and b > 0");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw InvalidInput("regularized_incomplete_beta requires x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double unit_ball_volume(int d) {
    if (d < 1) throw InvalidInput("unit_ball_volume requires d >= 1");
    const double half_d = 0.5 * static_cast<double>(d);
    return std::pow(M_PI, half_d) / std::tgamma(half_d + 1.0);
}

double unit_sphere_area(int d) { return static_cast<double>(d) * unit_ball_volume(d); }

double cap_profile(int d, double tau) {
    if (d < 1) throw InvalidInput("cap_profile requires d >= 1");
    if (tau >= 1.0) return 0.0;
    if (tau <= -1.0) tau = -1.0;

    // J_d(0) = B(1/2, (d+1)/2) / 2; the incomplete part follows from the
    // substitution t^2 = x.
    const double a = 0.5;
    const double b = 0.5 * (d + 1.0);
    const double half = 0.5 * std::exp(log_beta(a, b));
    if (tau >= 0.0) {
        return half * (1.0 - regularized_incomplete_beta(a, b, tau * tau));
    }
    return 2.0 * half - half * (1.0 - regularized_incomplete_beta(a, b, tau * tau));
}

double ball_overlap_volume(int d, double r1, double r2, double t) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw InvalidInput("ball_overlap_volume requires positive radii");
    }
    if (t < 0.0) throw InvalidInput("ball_overlap_volume requires t >= 0");

    if (t >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (t <= std::fabs(r1 - r2)) return unit_ball_volume(d) * std::pow(rmin, d);

    // Two caps, one per ball, cut at signed distances h1, h2 from the centers.
    const double h1 = (t * t + r1 * r1 - r2 * r2) / (2.0 * t);
    const double h2 = (t * t + r2 * r2 - r1 * r1) / (2.0 * t);
    const double wd1 = unit_ball_volume(d - 1);
    return wd1 * (std::pow(r1, d) * cap_profile(d, h1 / r1) +
                  std::pow(r2, d) * cap_profile(d, h2 / r2));
}

double sphere_cap_fraction(int d, double tau) {
    if (tau <= -1.0) return 1.0;
    if (tau >= 1.0) return 0.0;
    return sphere_cap_fraction_x(d, (1.0 - tau) * (1.0 + tau), tau >= 0.0);
}

double sphere_cap_fraction_x(int d, double one_minus_tau_sq, bool tau_nonnegative) {
    if (d < 2) throw InvalidInput("sphere_cap_fraction requires d >= 2");
    const double x = std::clamp(one_minus_tau_sq, 0.0, 1.0);
    const double half_cap =
        0.5 * regularized_incomplete_beta(0.5 * (d - 1.0), 0.5, x);
    return tau_nonnegative ? half_cap : 1.0 - half_cap;
}

} // namespace dropletlab
