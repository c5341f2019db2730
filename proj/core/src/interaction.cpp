#include "dropletlab/interaction.hpp"

#include <cmath>
#include <sstream>

#include "dropletlab/errors.hpp"

namespace dropletlab {

double MassPartition::total() const {
    double sum = 0.0;
    for (double m : masses) sum += m;
    return sum;
}

void MassPartition::validate() const {
    if (masses.empty()) throw InvalidInput("MassPartition: at least the anchor mass required");
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (!(masses[i] > 0.0)) {
            std::ostringstream msg;
            msg << "MassPartition: mass " << i << " must be positive";
            throw InvalidInput(msg.str());
        }
    }
}

void MassPartition::validate(const ModelParams& params) const {
    validate();
    const double sum = total();
    if (std::fabs(sum - params.M) > 1e-12 * std::fabs(params.M)) {
        std::ostringstream msg;
        msg << "MassPartition: masses sum to " << sum << ", expected M = " << params.M;
        throw InvalidInput(msg.str());
    }
}

double PointConfiguration::point_norm(int i) const {
    double n2 = 0.0;
    for (double x : point(i)) n2 += x * x;
    return std::sqrt(n2);
}

namespace {

void check_compatible(const MassPartition& masses, const PointConfiguration& config,
                      const ModelParams& params) {
    params.validate();
    masses.validate();
    if (config.dim != params.d) {
        throw InvalidInput("PointConfiguration: dimension does not match params.d");
    }
    if (masses.count() != config.count() + 1) {
        throw InvalidInput("interaction: need one mass per point plus the anchor mass");
    }
}

// Squared distance between movable points i and j (1-based droplet
// indices, stored 0-based in config).
double pair_dist2(const PointConfiguration& config, int i, int j) {
    const auto yi = config.point(i);
    const auto yj = config.point(j);
    double n2 = 0.0;
    for (int k = 0; k < config.dim; ++k) {
        const double diff = yi[k] - yj[k];
        n2 += diff * diff;
    }
    return n2;
}

[[noreturn]] void throw_degenerate(int i, int j) {
    std::ostringstream msg;
    if (j == 0) {
        msg << "degenerate configuration: point " << i << " coincides with the anchor";
    } else {
        msg << "degenerate configuration: points " << i << " and " << j << " coincide";
    }
    throw DegenerateConfiguration(msg.str(), i, j);
}

} // namespace

EnergyParts interaction_energy(const MassPartition& masses, const PointConfiguration& config,
                               const ModelParams& params) {
    check_compatible(masses, config, params);
    const int n = config.count();
    const double s = params.s;
    const double p = params.p;

    EnergyParts parts;
    for (int i = 1; i <= n; ++i) {
        const double norm2 = [&] {
            double n2 = 0.0;
            for (double x : config.point(i - 1)) n2 += x * x;
            return n2;
        }();
        if (norm2 == 0.0) throw_degenerate(i, 0);
        // anchor pair counted twice (ordered-pair convention)
        parts.repulsion += 2.0 * masses.masses[0] * masses.masses[static_cast<std::size_t>(i)] *
                           std::pow(norm2, -0.5 * s);
        parts.attraction +=
            masses.masses[static_cast<std::size_t>(i)] * std::pow(norm2, -0.5 * p);
        for (int j = i + 1; j <= n; ++j) {
            const double d2 = pair_dist2(config, i - 1, j - 1);
            if (d2 == 0.0) throw_degenerate(i, j);
            parts.repulsion += 2.0 * masses.masses[static_cast<std::size_t>(i)] *
                               masses.masses[static_cast<std::size_t>(j)] *
                               std::pow(d2, -0.5 * s);
        }
    }
    parts.total = parts.repulsion - parts.attraction;
    if (!std::isfinite(parts.total)) {
        throw DegenerateConfiguration("interaction energy overflowed near a collision", -1, -1);
    }
    return parts;
}

std::vector<double> interaction_gradient(const MassPartition& masses,
                                         const PointConfiguration& config,
                                         const ModelParams& params) {
    check_compatible(masses, config, params);
    const int n = config.count();
    const int d = config.dim;
    const double s = params.s;
    const double p = params.p;

    std::vector<double> grad(config.coords.size(), 0.0);
    for (int i = 1; i <= n; ++i) {
        const auto yi = config.point(i - 1);
        double* gi = grad.data() + static_cast<std::size_t>(i - 1) * d;

        double norm2 = 0.0;
        for (double x : yi) norm2 += x * x;
        if (norm2 == 0.0) throw_degenerate(i, 0);

        // anchor term: repulsion towards/away from y_0 = 0 plus attraction
        const double mi = masses.masses[static_cast<std::size_t>(i)];
        const double rep0 = -2.0 * s * mi * masses.masses[0] * std::pow(norm2, -0.5 * (s + 2.0));
        const double att = p * mi * std::pow(norm2, -0.5 * (p + 2.0));
        for (int k = 0; k < d; ++k) gi[k] += (rep0 + att) * yi[k];

        for (int j = i + 1; j <= n; ++j) {
            const auto yj = config.point(j - 1);
            double* gj = grad.data() + static_cast<std::size_t>(j - 1) * d;
            const double d2 = pair_dist2(config, i - 1, j - 1);
            if (d2 == 0.0) throw_degenerate(i, j);
            const double coeff = -2.0 * s * mi * masses.masses[static_cast<std::size_t>(j)] *
                                 std::pow(d2, -0.5 * (s + 2.0));
            for (int k = 0; k < d; ++k) {
                const double diff = yi[k] - yj[k];
                gi[k] += coeff * diff;
                gj[k] -= coeff * diff;
            }
        }
    }
    return grad;
}

EnergyParts scaled_interaction_energy(const MassPartition& masses,
                                      const PointConfiguration& config,
                                      const ModelParams& params, double lambda) {
    if (!(lambda > 0.0)) throw InvalidInput("scaled_interaction_energy: lambda > 0 required");
    EnergyParts parts = interaction_energy(masses, config, params);
    parts.repulsion *= std::pow(lambda, -params.s);
    parts.attraction *= std::pow(lambda, -params.p);
    parts.total = parts.repulsion - parts.attraction;
    return parts;
}

TwoBodyOptimum two_body_optimum(double m0, double m1, const ModelParams& params) {
    params.validate();
    if (!(m0 > 0.0) || !(m1 > 0.0)) {
        throw InvalidInput("two_body_optimum: masses must be positive");
    }
    TwoBodyOptimum opt;
    opt.distance = std::pow(2.0 * params.s * m0 / params.p, 1.0 / (params.s - params.p));
    opt.energy = 2.0 * m0 * m1 * std::pow(opt.distance, -params.s) -
                 m1 * std::pow(opt.distance, -params.p);
    return opt;
}

} // namespace dropletlab
