#ifndef DROPLETLAB_TESTS_ORACLES_HPP
#define DROPLETLAB_TESTS_ORACLES_HPP

// Independent brute-force oracles backing the derived expected values in
// the test suites: plain Monte Carlo double integrals, dense 1-D grid
// searches and central-difference gradients. These deliberately avoid the
// library's reduction formulas and samplers so they can catch errors in
// them; only the raw RngStream bits are shared.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dropletlab/errors.hpp"
#include "dropletlab/model.hpp"
#include "dropletlab/rng.hpp"

namespace dropletlab::oracle {

class StencilFailure : public Error {
public:
    explicit StencilFailure(const std::string& what) : Error(what) {}
};

struct OracleRecord {
    std::string name;
    nlohmann::json inputs;
    double value = 0.0;
    double uncertainty = 0.0; // > 0 for stochastic oracles
    std::uint64_t samples = 0; // sample count or grid resolution
    RngSeed seed = 0;
    nlohmann::json extra;
};

void to_json(nlohmann::json& j, const OracleRecord& r);
void from_json(const nlohmann::json& j, OracleRecord& r);

std::vector<OracleRecord> read_records(const std::string& path);
void write_records(const std::string& path, const std::vector<OracleRecord>& records);

/// Plain Monte Carlo for the double integral of |x-y|^{-s_kernel} over two
/// balls, with rejection sampling in each ball. Reports mean and standard
/// error. Requires samples >= 1e5 and s_kernel < d.
OracleRecord mc_double_integral(const std::string& name, const BallDroplet& b1,
                                const BallDroplet& b2, double s_kernel, std::uint64_t samples,
                                RngSeed seed);

/// Brute-force 1-D minimization: dense grid plus golden-section refinement
/// around the best grid point. `value` is the argmin; extra["min_value"]
/// the minimum. Requires resolution >= 1e3.
OracleRecord grid_minimize_1d(const std::string& name, const std::function<double(double)>& f,
                              double a, double b, std::uint64_t resolution);

/// Central differences per coordinate; extra["gradient"] carries the
/// vector, `value` its Euclidean norm. Throws StencilFailure when the
/// function cannot be evaluated at a stencil point.
OracleRecord finite_difference_gradient(const std::string& name,
                                        const std::function<double(const std::vector<double>&)>& f,
                                        const std::vector<double>& point, double step);

} // namespace dropletlab::oracle

#endif
