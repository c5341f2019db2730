#include "dropletlab/model.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "dropletlab/errors.hpp"
#include "dropletlab/quadrature.hpp"

namespace dropletlab {

void ModelParams::validate() const {
    if (d < 2) throw InvalidInput("ModelParams: d >= 2 required");
    if (!(p > 0.0)) throw InvalidInput("ModelParams: p > 0 required");
    if (!(s > p)) throw InvalidInput("ModelParams: s > p required");
    if (!(s < d)) throw InvalidInput("ModelParams: s < d required");
    if (!(Z >= 0.0)) throw InvalidInput("ModelParams: Z >= 0 required");
    if (!(M > 0.0)) throw InvalidInput("ModelParams: M > 0 required");
}

double ball_radius(double mass, int d) {
    if (!(mass > 0.0)) throw InvalidInput("ball_radius: mass > 0 required");
    if (d < 1) throw InvalidInput("ball_radius: d >= 1 required");
    return std::pow(mass / unit_ball_volume(d), 1.0 / static_cast<double>(d));
}

double BallDroplet::center_norm() const {
    double n2 = 0.0;
    for (double c : center) n2 += c * c;
    return std::sqrt(n2);
}

double riesz_unit_ball_self_energy(int d, double s, double rel_tol) {
    if (d < 1) throw InvalidInput("riesz_unit_ball_self_energy: d >= 1 required");
    if (!(s > 0.0)) throw InvalidInput("riesz_unit_ball_self_energy: s > 0 required");
    if (s >= static_cast<double>(d)) {
        throw DivergentIntegral("riesz_unit_ball_self_energy: s < d required for a finite integral");
    }

    // gamma = d omega_d \int_0^2 u^{d-1-s} V_ovl(u) du, with V_ovl the
    // overlap volume of two unit balls at center distance u. The integrand
    // may carry an integrable u^{d-1-s} singularity at zero.
    const double wd1 = unit_ball_volume(d - 1 >= 1 ? d - 1 : 1);
    const double power = static_cast<double>(d) - 1.0 - s;
    auto integrand = [d, power, wd1](double u) {
        if (u <= 0.0 || u >= 2.0) return 0.0;
        const double overlap = 2.0 * wd1 * cap_profile(d, 0.5 * u);
        return std::pow(u, power) * overlap;
    };
    const QuadOutcome q = integrate_singular(integrand, 0.0, 2.0, rel_tol);
    return static_cast<double>(d) * unit_ball_volume(d) * q.value;
}

namespace {

std::map<std::tuple<int, double, double>, std::unique_ptr<RieszConstants>>& constants_cache() {
    static std::map<std::tuple<int, double, double>, std::unique_ptr<RieszConstants>> cache;
    return cache;
}

std::mutex& constants_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

const RieszConstants& riesz_constants(int d, double s, double tol) {
    std::lock_guard<std::mutex> lock(constants_mutex());
    auto& cache = constants_cache();
    const auto key = std::make_tuple(d, s, tol);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto k = std::make_unique<RieszConstants>();
        k->d = d;
        k->s = s;
        k->omega_d = unit_ball_volume(d);
        k->gamma_ds = riesz_unit_ball_self_energy(d, s, tol);
        k->C1 = static_cast<double>(d) * std::pow(k->omega_d, 1.0 / static_cast<double>(d));
        k->C2 = k->gamma_ds * std::pow(k->omega_d, -(2.0 * d - s) / static_cast<double>(d));
        k->tolerance = tol;
        it = cache.emplace(key, std::move(k)).first;
    }
    return *it->second;
}

double ball_perimeter(double mass, const RieszConstants& k) {
    if (!(mass > 0.0)) throw InvalidInput("ball_perimeter: mass > 0 required");
    return k.C1 * std::pow(mass, (k.d - 1.0) / k.d);
}

double ball_perimeter(double mass, const ModelParams& params) {
    params.validate();
    return ball_perimeter(mass, riesz_constants(params.d, params.s));
}

double single_ball_energy(double mass, const RieszConstants& k) {
    if (mass < 0.0) throw InvalidInput("single_ball_energy: mass >= 0 required");
    if (mass == 0.0) return 0.0;
    return k.C1 * std::pow(mass, (k.d - 1.0) / k.d) +
           k.C2 * std::pow(mass, (2.0 * k.d - k.s) / k.d);
}

double single_ball_energy(double mass, const ModelParams& params) {
    params.validate();
    return single_ball_energy(mass, riesz_constants(params.d, params.s));
}

double single_ball_multiplier(double mass, const RieszConstants& k) {
    if (!(mass > 0.0)) throw InvalidInput("single_ball_multiplier: mass > 0 required");
    const double d = static_cast<double>(k.d);
    return k.C1 * (d - 1.0) / d * std::pow(mass, -1.0 / d) +
           k.C2 * (2.0 * d - k.s) / d * std::pow(mass, (d - k.s) / d);
}

double single_ball_multiplier(double mass, const ModelParams& params) {
    params.validate();
    return single_ball_multiplier(mass, riesz_constants(params.d, params.s));
}

MassThresholds mass_thresholds(const RieszConstants& k) {
    const double d = static_cast<double>(k.d);
    const double expo = d / (1.0 + d - k.s);
    MassThresholds t;
    t.coefficient_mass = std::pow(k.C1 / k.C2, expo);
    // Second derivative of C1 m^a + C2 m^b vanishes where
    // m^{b-a} = C1 a(1-a) / (C2 b(b-1)), a = (d-1)/d, b = (2d-s)/d.
    const double a = (d - 1.0) / d;
    const double b = (2.0 * d - k.s) / d;
    t.inflection_mass =
        std::pow(k.C1 * a * (1.0 - a) / (k.C2 * b * (b - 1.0)), 1.0 / (b - a));
    return t;
}

MassThresholds mass_thresholds(const ModelParams& params) {
    params.validate();
    return mass_thresholds(riesz_constants(params.d, params.s));
}

} // namespace dropletlab
