#ifndef DROPLETLAB_ASYMPTOTICS_HPP
#define DROPLETLAB_ASYMPTOTICS_HPP

#include <limits>
#include <span>
#include <vector>

#include "dropletlab/integrals.hpp"
#include "dropletlab/interaction.hpp"
#include "dropletlab/model.hpp"
#include "dropletlab/optimizer.hpp"

namespace dropletlab {

/// Distance scale Z^{-1/(s-p)} at which droplet repulsion and background
/// attraction balance. Requires Z > 0.
double separation_scale(double Z, const ModelParams& params);

/// A mass partition together with order-one droplet positions and the
/// attraction weight. The physical droplets are balls of mass m^i centered
/// at x^i = Z^{-1/(s-p)} y_i, with the anchor ball at the origin.
struct GeneralizedConfig {
    MassPartition partition;
    PointConfiguration scaled_points;
    double Z = 0.0;

    int droplet_count() const { return scaled_points.count(); } // N
    std::vector<BallDroplet> physical_droplets(const ModelParams& params) const;
};

/// Energy contributions of a disjoint ball configuration. `confinement`
/// stores the attraction term Z * sum_i V(B_i) as a positive magnitude;
/// total = perimeter + riesz - confinement. Perimeter and the ball
/// self-energies are closed forms; cross terms and off-center confinement
/// integrals contribute to error_estimate.
struct EnergyBreakdown {
    double perimeter = 0.0;
    double riesz = 0.0;
    double confinement = 0.0;
    double total = 0.0;
    double error_estimate = 0.0;
};

/// Full energy of the configuration restricted to balls. Throws
/// InvalidConfiguration if any two droplets overlap.
EnergyBreakdown ball_configuration_energy(const GeneralizedConfig& gc, const ModelParams& params,
                                          double rel_tol = kDefaultQuadTol);

/// Three-term small-Z expansion evaluated at the configuration:
/// sum_i e(m^i) - Z V(origin ball) + Z^{s/(s-p)} * interaction total.
double predicted_energy(const GeneralizedConfig& gc, const ModelParams& params);

struct ExpansionReport {
    double Z = 0.0;
    double exact = 0.0;
    double predicted = 0.0;
    double residual = 0.0; // exact - predicted
};

struct ExpansionSweep {
    std::vector<ExpansionReport> reports;
    bool exact_match = false; // all residuals identically zero (N = 0)
    double slope = std::numeric_limits<double>::quiet_NaN();
    double fit_rms = std::numeric_limits<double>::quiet_NaN();
};

/// Evaluate exact and predicted energies on a Z grid and fit the log-log
/// slope of |residual| by least squares. The residual is accumulated
/// term-by-term (cross-energy and confinement differences), which is the
/// same quantity as exact - predicted with the shared closed-form terms
/// cancelled analytically instead of in floating point.
ExpansionSweep expansion_residual_sweep(const MassPartition& partition,
                                        const PointConfiguration& scaled_points,
                                        const ModelParams& params,
                                        std::span<const double> z_grid,
                                        double rel_tol = 1e-12);

/// Disadvantage of the best two-part split at mass M:
/// min_{0<m<M} [e(m) + e(M-m)] - e(M). Positive while a single ball wins.
double split_gap(double M, const RieszConstants& constants);

/// Least mass where the two-part split starts to beat the single ball,
/// found by bisection (relative 1e-6) on split_gap over [m_lo, m_hi]. This
/// is a proxy under the ball ansatz, an upper bound for the true breakup
/// mass, not the breakup mass itself. Throws BracketFailure when the
/// interval does not bracket a sign change.
double split_threshold(const ModelParams& params, double m_lo, double m_hi);
double split_threshold(const RieszConstants& constants, double m_lo, double m_hi);

/// Best generalized energy of mass M in the ball model: minimum over
/// droplet counts up to n_max of the partition objective with the
/// confinement credit Z V(ball(m^0)) on the origin part.
struct GeneralizedBallEnergy {
    int droplet_count = 0; // N
    MassPartition partition;
    double value = 0.0;
};

GeneralizedBallEnergy generalized_ball_energy(double M, double Z, int n_max,
                                              const ModelParams& params,
                                              const OptimizerOptions& opts);

struct SubadditivityVerdict {
    double whole = 0.0;    // generalized energy of M at weight Z
    double attached = 0.0; // generalized energy of m' at weight Z
    double free = 0.0;     // generalized energy of M - m' at weight 0
    double slack = 0.0;    // attached + free - whole
    bool holds = false;
};

/// Check whole <= attached + free up to a relative tolerance on the slack.
/// n_max < 0 picks the cap adaptively so that it never binds: a binding cap
/// truncates the feasible partitions and the inequality can genuinely fail.
SubadditivityVerdict subadditivity_check(double M, double m_prime, const ModelParams& params,
                                         const OptimizerOptions& opts, int n_max = -1,
                                         double rel_slack_tol = 1e-8);

/// Droplet count large enough that one more part never improves the
/// partition of the given mass (based on the mass that minimizes the
/// per-mass single-ball energy).
int saturating_droplet_count(double M, const ModelParams& params);

struct LimitSweepRow {
    double Z = 0.0;
    double value = 0.0; // generalized ball energy at weight Z
    double gap = 0.0;   // zero-weight value minus value, nonnegative
};

struct LimitSweep {
    double zero_weight_value = 0.0;
    std::vector<LimitSweepRow> rows;
};

/// Generalized ball energies along a descending Z grid, together with the
/// gaps to the zero-weight value. The gap obeys
/// gap <= (d omega_d / (d-p) + M) Z and shrinks monotonically as Z -> 0.
LimitSweep zero_attraction_limit_sweep(double M, const ModelParams& params,
                                       std::span<const double> z_grid,
                                       const OptimizerOptions& opts, int n_max = 8);

} // namespace dropletlab

#endif
