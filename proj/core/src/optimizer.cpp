#include "dropletlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "dropletlab/errors.hpp"
#include "dropletlab/integrals.hpp"

namespace dropletlab {

void OptimizerOptions::validate() const {
    if (starts < 1) throw InvalidInput("OptimizerOptions: starts >= 1 required");
    if (max_iterations < 1) throw InvalidInput("OptimizerOptions: max_iterations >= 1 required");
    if (!(gradient_tolerance > 0.0)) {
        throw InvalidInput("OptimizerOptions: gradient_tolerance > 0 required");
    }
    if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
        throw InvalidInput("OptimizerOptions: step_shrink in (0, 1) required");
    }
}

namespace {

constexpr double kArmijo = 1e-4;

double norm(const std::vector<double>& v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    return std::sqrt(n2);
}

// Energy evaluation that treats degenerate configurations as +inf so the
// line search can reject the step instead of smoothing the kernel.
std::optional<double> try_energy(const MassPartition& masses, const PointConfiguration& config,
                                 const ModelParams& params) {
    try {
        return interaction_energy(masses, config, params).total;
    } catch (const DegenerateConfiguration&) {
        return std::nullopt;
    }
}

struct StartOutcome {
    PointConfiguration config;
    double value = 0.0;
    double gradient_norm = 0.0;
    bool converged = false;
};

std::optional<StartOutcome> run_descent(const MassPartition& masses, PointConfiguration x,
                                        const ModelParams& params, const OptimizerOptions& opts,
                                        double r_init) {
    const double bound = 10.0 * r_init;
    auto escaped = [&](const PointConfiguration& cfg) {
        for (int i = 0; i < cfg.count(); ++i) {
            if (cfg.point_norm(i) > bound) return true;
        }
        return false;
    };

    auto f0 = try_energy(masses, x, params);
    if (!f0) return std::nullopt;
    double f = *f0;
    std::vector<double> g = interaction_gradient(masses, x, params);
    double gn = norm(g);

    std::vector<double> prev_coords, prev_grad;
    double step = 0.01 * r_init / std::max(gn, 1e-300);

    // Nonmonotone (watchdog) reference values let the Barzilai-Borwein
    // steps through; plain monotone Armijo stalls them.
    constexpr std::size_t kWindow = 8;
    std::vector<double> recent{f};
    double best_f = f;
    std::vector<double> best_coords = x.coords;

    StartOutcome out;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (gn <= opts.gradient_tolerance) {
            out.converged = true;
            break;
        }

        if (!prev_coords.empty()) {
            double sxx = 0.0;
            double sxy = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                const double dx = x.coords[k] - prev_coords[k];
                const double dg = g[k] - prev_grad[k];
                sxx += dx * dx;
                sxy += dx * dg;
            }
            step = (sxy > 1e-300) ? sxx / sxy : step / opts.step_shrink;
        }
        step = std::min(step, r_init / std::max(gn, 1e-300));

        const double f_ref = *std::max_element(recent.begin(), recent.end());
        bool accepted = false;
        PointConfiguration trial = x;
        while (step * gn > 1e-16 * r_init) {
            for (std::size_t k = 0; k < g.size(); ++k) {
                trial.coords[k] = x.coords[k] - step * g[k];
            }
            const auto ft = try_energy(masses, trial, params);
            if (ft && *ft <= f_ref - kArmijo * step * gn * gn) {
                accepted = true;
                break;
            }
            step *= opts.step_shrink;
        }
        if (!accepted) break; // line search exhausted; report the current point

        prev_coords = x.coords;
        prev_grad = g;
        x = trial;
        if (escaped(x)) return std::nullopt;
        f = *try_energy(masses, x, params);
        g = interaction_gradient(masses, x, params);
        gn = norm(g);
        recent.push_back(f);
        if (recent.size() > kWindow) recent.erase(recent.begin());
        if (gn <= opts.gradient_tolerance) {
            out.converged = true;
            break;
        }
        if (f < best_f) {
            best_f = f;
            best_coords = x.coords;
        }
    }

    // The nonmonotone search may end above an earlier iterate.
    if (best_f < f) {
        x.coords = best_coords;
        f = best_f;
        g = interaction_gradient(masses, x, params);
        gn = norm(g);
        out.converged = gn <= opts.gradient_tolerance;
    }

    out.config = std::move(x);
    out.value = f;
    out.gradient_norm = gn;
    return out;
}

} // namespace

ConfigResult minimize_configuration(const MassPartition& masses, const ModelParams& params,
                                    const OptimizerOptions& opts) {
    params.validate();
    masses.validate();
    opts.validate();
    const int n = masses.count() - 1;
    if (n < 1) throw InvalidInput("minimize_configuration: at least one movable droplet required");

    const double max_mass = *std::max_element(masses.masses.begin(), masses.masses.end());
    const double r_init =
        std::pow(2.0 * params.s * max_mass / params.p, 1.0 / (params.s - params.p));

    std::optional<StartOutcome> best;
    int best_start = -1;
    int usable = 0;
    for (int k = 0; k < opts.starts; ++k) {
        RngStream stream(opts.seed, "optimizer/minimize_configuration/start/" + std::to_string(k));
        PointConfiguration x;
        x.dim = params.d;
        x.coords.resize(static_cast<std::size_t>(n) * params.d);
        for (int i = 0; i < n; ++i) {
            const std::vector<double> dir = stream.uniform_direction(params.d);
            const double radius = r_init * (1.0 + stream.uniform(-0.5, 0.5));
            auto pt = x.point(i);
            for (int c = 0; c < params.d; ++c) pt[c] = radius * dir[c];
        }

        auto outcome = run_descent(masses, std::move(x), params, opts, r_init);
        if (!outcome) continue;
        ++usable;
        if (!best || outcome->value < best->value) {
            best = std::move(outcome);
            best_start = k;
        }
    }
    (void)best_start;

    if (!best) {
        std::ostringstream msg;
        msg << "minimize_configuration: all " << opts.starts
            << " starts escaped or degenerated (N = " << n << ", seed = " << opts.seed << ")";
        throw OptimizationFailed(msg.str());
    }

    ConfigResult result;
    result.config = std::move(best->config);
    result.value = best->value;
    result.gradient_norm = best->gradient_norm;
    // A nonnegative best value contradicts the model's negative minimum,
    // so it is reported as not converged.
    result.converged = best->converged && result.value < 0.0;
    result.starts_used = usable;
    return result;
}

namespace {

// Euclidean projection onto {x_i >= lo, sum x_i = target}.
void project_simplex(std::vector<double>& x, double target, double lo) {
    const std::size_t n = x.size();
    std::vector<double> u(n);
    const double shifted_target = target - lo * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = x[i] - lo;

    std::vector<double> sorted = u;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - shifted_target) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) theta = candidate;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(u[i] - theta, 0.0) + lo;
}

struct PartitionObjective {
    const RieszConstants* constants;
    const ModelParams* params;
    double origin_weight; // confinement credit on part 0

    double origin_potential(double m) const {
        if (m <= 0.0) return 0.0;
        return confinement_closed_form(ball_radius(m, params->d), *params);
    }
    double origin_potential_derivative(double m) const {
        const double d = static_cast<double>(params->d);
        const double c_v = d * constants->omega_d / (d - params->p) *
                           std::pow(constants->omega_d, -(d - params->p) / d);
        return c_v * (d - params->p) / d * std::pow(m, -params->p / d);
    }

    double value(const std::vector<double>& m) const {
        double sum = 0.0;
        for (double mi : m) sum += single_ball_energy(mi, *constants);
        if (origin_weight > 0.0 && !m.empty()) sum -= origin_weight * origin_potential(m[0]);
        return sum;
    }
    double gradient(const std::vector<double>& m, std::size_t i) const {
        double g = single_ball_multiplier(std::max(m[i], 1e-300), *constants);
        if (i == 0 && origin_weight > 0.0) {
            g -= origin_weight * origin_potential_derivative(std::max(m[0], 1e-300));
        }
        return g;
    }
};

struct SupportCandidate {
    std::vector<double> masses; // positive parts only
    double value = 0.0;
};

// Projected gradient descent with backtracking on a fixed support size.
SupportCandidate projected_gradient(const PartitionObjective& obj, std::vector<double> m,
                                    double M, double floor, const OptimizerOptions& opts) {
    project_simplex(m, M, floor);
    const std::size_t n = m.size();
    double f = obj.value(m);
    std::vector<double> g(n), prev_m, prev_g;
    for (std::size_t i = 0; i < n; ++i) g[i] = obj.gradient(m, i);

    double step = 0.0;
    {
        double gmax = 0.0;
        for (double gi : g) gmax = std::max(gmax, std::fabs(gi));
        step = 0.1 * M / std::max(gmax, 1e-300);
    }

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (!prev_m.empty()) {
            double sxx = 0.0;
            double sxy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dx = m[i] - prev_m[i];
                const double dg = g[i] - prev_g[i];
                sxx += dx * dx;
                sxy += dx * dg;
            }
            if (sxy > 1e-300) step = sxx / sxy;
        }

        std::vector<double> trial(n);
        double moved = 0.0;
        bool accepted = false;
        while (step > 1e-18 * M) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = m[i] - step * g[i];
            project_simplex(trial, M, floor);
            moved = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = trial[i] - m[i];
                moved += diff * diff;
            }
            const double ft = obj.value(trial);
            if (ft <= f - kArmijo / step * moved) {
                accepted = true;
                break;
            }
            step *= opts.step_shrink;
        }
        if (!accepted) break;

        prev_m = m;
        prev_g = g;
        m = trial;
        f = obj.value(m);
        for (std::size_t i = 0; i < n; ++i) g[i] = obj.gradient(m, i);
        if (std::sqrt(moved) / step <= opts.gradient_tolerance) break;
    }
    return {std::move(m), f};
}

std::optional<SupportCandidate> optimize_support(const PartitionObjective& obj, double M,
                                                 std::size_t n_parts,
                                                 const OptimizerOptions& opts,
                                                 double inflection_mass) {
    const double floor = 1e-9 * M / static_cast<double>(n_parts);
    std::optional<SupportCandidate> best;

    auto consider = [&](std::vector<double> start) {
        SupportCandidate cand = projected_gradient(obj, std::move(start), M, floor, opts);
        if (obj.origin_weight > 0.0) {
            // The confinement credit is maximized by the largest part, so
            // canonicalize part 0 and re-descend.
            auto largest = std::max_element(cand.masses.begin(), cand.masses.end());
            if (largest != cand.masses.begin()) {
                std::swap(*largest, cand.masses.front());
                cand = projected_gradient(obj, std::move(cand.masses), M, floor, opts);
            }
        }
        // At-most-one rule: two or more plain parts strictly inside the
        // concavity region admit a strictly better partition on a smaller
        // support, which a separate support run covers. The credited origin
        // part has a different cost and never counts.
        if (n_parts >= 2) {
            int small = 0;
            for (std::size_t i = obj.origin_weight > 0.0 ? 1 : 0; i < cand.masses.size(); ++i) {
                if (cand.masses[i] < inflection_mass * (1.0 - 1e-12)) ++small;
            }
            if (small >= 2) return;
        }
        if (!best || cand.value < best->value) best = std::move(cand);
    };

    consider(std::vector<double>(n_parts, M / static_cast<double>(n_parts)));
    if (n_parts >= 2) {
        for (int k = 0; k < opts.starts; ++k) {
            RngStream stream(opts.seed, "optimizer/minimize_partition/support" +
                                            std::to_string(n_parts) + "/start/" +
                                            std::to_string(k));
            std::vector<double> draw(n_parts);
            double total = 0.0;
            for (auto& x : draw) {
                x = -std::log(std::max(stream.uniform01(), 1e-300));
                total += x;
            }
            for (auto& x : draw) x *= M / total;
            consider(std::move(draw));
        }
    }
    // May be empty when every candidate was pruned (e.g. the mass is too
    // small to hold n_parts parts outside the concavity region).
    return best;
}

PartitionResult finalize_partition(const PartitionObjective& obj, SupportCandidate cand,
                                   std::size_t total_parts) {
    PartitionResult result;
    result.partition.masses = std::move(cand.masses);
    if (obj.origin_weight == 0.0) {
        // Parts are exchangeable without the origin credit; canonical order
        // is descending.
        std::sort(result.partition.masses.begin(), result.partition.masses.end(),
                  std::greater<double>());
    } else {
        std::sort(result.partition.masses.begin() + 1, result.partition.masses.end(),
                  std::greater<double>());
    }
    result.partition.masses.resize(total_parts, 0.0);
    result.value = cand.value;
    result.multipliers.resize(total_parts);
    for (std::size_t i = 0; i < total_parts; ++i) {
        result.multipliers[i] = result.partition.masses[i] > 0.0
                                    ? obj.gradient(result.partition.masses, i)
                                    : std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

PartitionResult minimize_partition_impl(double M, int extra_parts, const ModelParams& params,
                                        const OptimizerOptions& opts, double origin_weight) {
    params.validate();
    opts.validate();
    if (!(M > 0.0)) throw InvalidInput("minimize_partition: M > 0 required");
    if (extra_parts < 0) throw InvalidInput("minimize_partition: N >= 0 required");

    const RieszConstants& constants = riesz_constants(params.d, params.s);
    const PartitionObjective obj{&constants, &params, origin_weight};
    const double inflection = mass_thresholds(constants).inflection_mass;

    std::optional<SupportCandidate> best;
    for (std::size_t n_parts = 1; n_parts <= static_cast<std::size_t>(extra_parts) + 1;
         ++n_parts) {
        std::optional<SupportCandidate> cand =
            optimize_support(obj, M, n_parts, opts, inflection);
        if (!cand) continue; // whole support size pruned
        // Nonincreasing in the support size; prefer fewer parts on ties.
        if (!best || cand->value < best->value - 1e-12 * (1.0 + std::fabs(best->value))) {
            best = std::move(cand);
        }
    }
    return finalize_partition(obj, std::move(*best),
                              static_cast<std::size_t>(extra_parts) + 1);
}

} // namespace

PartitionResult minimize_partition(double M, int extra_parts, const ModelParams& params,
                                   const OptimizerOptions& opts) {
    return minimize_partition_impl(M, extra_parts, params, opts, 0.0);
}

PartitionResult minimize_partition_weighted(double M, int extra_parts,
                                            const ModelParams& params,
                                            const OptimizerOptions& opts,
                                            double origin_weight) {
    if (origin_weight < 0.0) {
        throw InvalidInput("minimize_partition_weighted: origin_weight >= 0 required");
    }
    return minimize_partition_impl(M, extra_parts, params, opts, origin_weight);
}

std::pair<int, PartitionResult> optimal_droplet_count(double M, int n_max,
                                                      const ModelParams& params,
                                                      const OptimizerOptions& opts) {
    if (n_max < 0) throw InvalidInput("optimal_droplet_count: n_max >= 0 required");
    int best_n = 0;
    std::optional<PartitionResult> best;
    for (int n = 0; n <= n_max; ++n) {
        PartitionResult r = minimize_partition(M, n, params, opts);
        if (!best || r.value < best->value - 1e-12 * (1.0 + std::fabs(best->value))) {
            best = std::move(r);
            best_n = n;
        }
    }
    return {best_n, std::move(*best)};
}

} // namespace dropletlab
