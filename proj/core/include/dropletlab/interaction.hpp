#ifndef DROPLETLAB_INTERACTION_HPP
#define DROPLETLAB_INTERACTION_HPP

#include <span>
#include <vector>

#include "dropletlab/model.hpp"

namespace dropletlab {

/// Masses (m^0, ..., m^N); m^0 belongs to the anchored droplet.
struct MassPartition {
    std::vector<double> masses;

    int count() const { return static_cast<int>(masses.size()); }
    double total() const;
    /// All masses strictly positive; throws InvalidInput otherwise. When
    /// params are supplied also checks the total against params.M to
    /// relative 1e-12.
    void validate() const;
    void validate(const ModelParams& params) const;
};

/// Positions (y_1, ..., y_N) of the movable points, flat row-major. The
/// anchor y_0 = 0 is structural and never stored, so configurations outside
/// the admissible class cannot be represented.
struct PointConfiguration {
    int dim = 0;
    std::vector<double> coords;

    int count() const { return dim > 0 ? static_cast<int>(coords.size()) / dim : 0; }
    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> point(int i) {
        return {coords.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    double point_norm(int i) const;
};

/// Repulsion is the ordered-pair double sum over i != j of
/// m^i m^j |y_i - y_j|^{-s}; attraction is sum over i >= 1 of
/// m^i |y_i|^{-p}, stored positive. total = repulsion - attraction.
struct EnergyParts {
    double repulsion = 0.0;
    double attraction = 0.0;
    double total = 0.0;
};

/// Evaluate the point-droplet interaction energy. Throws
/// DegenerateConfiguration (with the offending indices, anchor = 0) on
/// coincident points or a point at the origin.
EnergyParts interaction_energy(const MassPartition& masses, const PointConfiguration& config,
                               const ModelParams& params);

/// Analytic gradient with respect to the movable points, flat row-major:
/// dF/dy_i = -2 s sum_{j != i} m^i m^j (y_i - y_j) |y_i - y_j|^{-s-2}
///           + p m^i y_i |y_i|^{-p-2}.
std::vector<double> interaction_gradient(const MassPartition& masses,
                                         const PointConfiguration& config,
                                         const ModelParams& params);

/// Energy of the configuration scaled by lambda, evaluated analytically
/// from the homogeneity of the two parts: repulsion * lambda^{-s} and
/// attraction * lambda^{-p}.
EnergyParts scaled_interaction_energy(const MassPartition& masses,
                                      const PointConfiguration& config,
                                      const ModelParams& params, double lambda);

struct TwoBodyOptimum {
    double distance = 0.0;
    double energy = 0.0;
};

/// Closed-form optimum of the anchor + one droplet problem:
/// r* = (2 s m0 / p)^{1/(s-p)}, F(r*) = 2 m0 m1 r*^{-s} - m1 r*^{-p} < 0.
TwoBodyOptimum two_body_optimum(double m0, double m1, const ModelParams& params);

} // namespace dropletlab

#endif
