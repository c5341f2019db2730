#ifndef DROPLETLAB_OPTIMIZER_HPP
#define DROPLETLAB_OPTIMIZER_HPP

#include <utility>
#include <vector>

#include "dropletlab/interaction.hpp"
#include "dropletlab/model.hpp"
#include "dropletlab/rng.hpp"

namespace dropletlab {

struct OptimizerOptions {
    int starts = 12;
    int max_iterations = 2000;
    double gradient_tolerance = 1e-8;
    double step_shrink = 0.5; // backtracking factor, in (0, 1)
    RngSeed seed = 0;

    void validate() const;
};

/// Outcome of a configuration minimization. `value` is the best energy over
/// all starts; `converged` requires the first-order condition
/// (gradient_norm <= tolerance) and a negative value. starts_used counts
/// the starts that produced a usable candidate (neither escaped nor
/// degenerate throughout).
struct ConfigResult {
    PointConfiguration config;
    double value = 0.0;
    double gradient_norm = 0.0;
    bool converged = false;
    int starts_used = 0;
};

/// Minimize the interaction energy over point configurations with the
/// anchor pinned, by multistart gradient descent with backtracking line
/// search. Starts are placed on the sphere of radius
/// (2 s max_i m^i / p)^{1/(s-p)}, jittered by +-50% radially, which is the
/// distance scale where the attraction well is active. Iterates that leave
/// 10x that radius are discarded as escaped.
ConfigResult minimize_configuration(const MassPartition& masses, const ModelParams& params,
                                    const OptimizerOptions& opts);

/// Outcome of a mass-partition minimization. `partition` holds N+1 masses
/// summing to M; boundary optima carry exact zeros. `value` is the
/// minimized objective. `multipliers` holds the per-part derivative of the
/// objective (NaN for zero parts); at an interior optimum they agree.
struct PartitionResult {
    MassPartition partition;
    double value = 0.0;
    std::vector<double> multipliers;
};

/// Minimize sum_i single_ball_energy(m^i) over the closed simplex
/// {m^i >= 0, sum m^i = M} with N+1 parts, by projected gradient descent
/// with multistart (simplex-uniform draws plus the equal partition) run on
/// every support size. Candidates with two or more positive masses below
/// the inflection mass are pruned: a strictly better partition with fewer
/// parts always exists there.
PartitionResult minimize_partition(double M, int extra_parts, const ModelParams& params,
                                   const OptimizerOptions& opts);

/// Variant used for generalized energies: part 0 sits at the origin and
/// earns the confinement credit, so its cost is
/// single_ball_energy(m) - origin_weight * V(ball(m)). multipliers[0]
/// includes the credit term.
PartitionResult minimize_partition_weighted(double M, int extra_parts,
                                            const ModelParams& params,
                                            const OptimizerOptions& opts,
                                            double origin_weight);

/// Smallest droplet count N in {0..n_max} whose partition value attains
/// the minimum (values are nonincreasing in N; ties break toward smaller
/// N).
std::pair<int, PartitionResult> optimal_droplet_count(double M, int n_max,
                                                      const ModelParams& params,
                                                      const OptimizerOptions& opts);

} // namespace dropletlab

#endif
