#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dropletlab/errors.hpp"
#include "dropletlab/integrals.hpp"
#include "oracle/oracles.hpp"
#include "test_support.hpp"

using namespace dropletlab;
using dropletlab::testing::rel_err;

namespace {

BallDroplet ball_at(int d, double x0, double mass) {
    std::vector<double> c(d, 0.0);
    c[0] = x0;
    return BallDroplet{std::move(c), mass};
}

const oracle::OracleRecord& find_record(const std::vector<oracle::OracleRecord>& records,
                                        const std::string& name) {
    for (const auto& r : records) {
        if (r.name == name) return r;
    }
    FAIL("missing oracle record ", name);
    std::abort();
}

} // namespace

TEST_CASE("cross energy stays inside the kernel monotonicity envelope") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const double m = unit_ball_volume(3);
    const auto q = riesz_cross_energy(ball_at(3, 0.0, m), ball_at(3, 10.0, m), params);
    CHECK(q.value > m * m / std::pow(12.0, 2.0));
    CHECK(q.value < m * m / std::pow(8.0, 2.0));
}

TEST_CASE("far-field error decay in the refinement sweep") {
    // Error against the point approximation decays at least one order
    // faster than the kernel; for center-symmetric balls the observed rate
    // is R^{-(s+2)} because the first-order term averages out.
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    double prev_err = 0.0;
    double max_c = 0.0;
    for (double R : {10.0, 20.0, 40.0, 80.0}) {
        const auto q = riesz_cross_energy(ball_at(3, 0.0, 1.0), ball_at(3, R, 1.0), params,
                                          QuadMethod::adaptive_1d, {1e-13, 0, 0});
        const double err = std::fabs(q.value - 1.0 / (R * R));
        max_c = std::max(max_c, err * std::pow(R, params.s + 1.0));
        if (prev_err > 0.0) {
            const double ratio = err / prev_err;
            CHECK(ratio < std::pow(2.0, -(params.s + 1.0)));
            CHECK(rel_err(ratio, std::pow(2.0, -(params.s + 2.0))) < 0.05);
        }
        prev_err = err;
    }
    CHECK(max_c < 1.0); // the paper-order constant stays finite and small
}

TEST_CASE("monte carlo and adaptive quadrature agree") {
    const auto records = oracle::read_records(testing::fixtures_path());
    const ModelParams d3s2{3, 2.0, 1.0, 0.0, 1.0};
    const ModelParams d3s1{3, 1.0, 0.5, 0.0, 1.0};
    const ModelParams d2s1{2, 1.0, 0.5, 0.0, 1.0};
    const double m3 = unit_ball_volume(3);
    const double m2 = unit_ball_volume(2);

    struct Case {
        const char* record;
        ModelParams params;
        double mass;
        double R;
    };
    for (const Case& c : {Case{"cross/d3s2R6", d3s2, m3, 6.0}, Case{"cross/d3s1R5", d3s1, m3, 5.0},
                          Case{"cross/d2s1R4", d2s1, m2, 4.0}}) {
        const auto& rec = find_record(records, c.record);
        const auto q = riesz_cross_energy(ball_at(c.params.d, 0.0, c.mass),
                                          ball_at(c.params.d, c.R, c.mass), c.params);
        CHECK(std::fabs(q.value - rec.value) < 3.0 * rec.uncertainty);
    }

    // Same check with the library's own Monte Carlo path.
    IntegralOptions opts;
    opts.seed = 99;
    const auto mc = riesz_cross_energy(ball_at(3, 0.0, m3), ball_at(3, 6.0, m3), d3s2,
                                       QuadMethod::monte_carlo, opts);
    const auto ad = riesz_cross_energy(ball_at(3, 0.0, m3), ball_at(3, 6.0, m3), d3s2);
    CHECK(std::fabs(mc.value - ad.value) < 3.0 * mc.error_estimate);
}

TEST_CASE("far-field point approximation") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    CHECK(rel_err(far_field_cross_energy(1.0, 1.0, 1.0, params).value, 1.0) < 1e-14);
    const double v1 = far_field_cross_energy(1.0, 1.0, 7.0, params).value;
    const double v2 = far_field_cross_energy(1.0, 1.0, 14.0, params).value;
    CHECK(rel_err(v2, v1 * std::pow(2.0, -params.s)) < 1e-13);
    CHECK_THROWS_AS(far_field_cross_energy(1.0, 1.0, 0.0, params), InvalidInput);
}

TEST_CASE("far-field bound dominates the true error") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const double m1 = 1.0;
    const double m2 = 2.0;
    const double delta = ball_radius(m1, 3) + ball_radius(m2, 3);
    for (double factor : {4.0, 6.0, 10.0, 20.0}) {
        const double R = factor * delta;
        const auto ff = far_field_cross_energy(m1, m2, R, params);
        const auto exact = riesz_cross_energy(ball_at(3, 0.0, m1), ball_at(3, R, m2), params,
                                              QuadMethod::adaptive_1d, {1e-13, 0, 0});
        const double true_err = std::fabs(exact.value - ff.value);
        CHECK(ff.error_estimate / true_err >= 1.0);
    }
}

TEST_CASE("far-field consistency as the separation grows") {
    const ModelParams params{3, 1.5, 0.5, 0.0, 1.0};
    const double m1 = 1.0;
    const double m2 = 1.5;
    const double delta = ball_radius(m1, 3) + ball_radius(m2, 3);
    double prev = 1e300;
    for (int k = 3; k <= 7; ++k) {
        const double R = std::pow(2.0, k) * delta;
        const auto q = riesz_cross_energy(ball_at(3, 0.0, m1), ball_at(3, R, m2), params,
                                          QuadMethod::adaptive_1d, {1e-13, 0, 0});
        const double err = std::fabs(std::pow(R, params.s) * q.value - m1 * m2);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("cross energy is exactly symmetric and translation invariant") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const BallDroplet a = ball_at(3, 0.0, 1.3);
    const BallDroplet b = ball_at(3, 6.0, 0.4);
    const auto q_ab = riesz_cross_energy(a, b, params);
    const auto q_ba = riesz_cross_energy(b, a, params);
    CHECK(q_ab.value == q_ba.value);

    IntegralOptions opts;
    opts.seed = 3;
    const auto mc_ab = riesz_cross_energy(a, b, params, QuadMethod::monte_carlo, opts);
    const auto mc_ba = riesz_cross_energy(b, a, params, QuadMethod::monte_carlo, opts);
    CHECK(mc_ab.value == mc_ba.value);

    // Translation by an exactly representable offset changes nothing.
    BallDroplet a_shift = a;
    BallDroplet b_shift = b;
    for (int k = 0; k < 3; ++k) {
        a_shift.center[k] += 1024.0;
        b_shift.center[k] += 1024.0;
    }
    const auto q_shift = riesz_cross_energy(a_shift, b_shift, params);
    CHECK(q_shift.value == q_ab.value);
}

TEST_CASE("monte carlo determinism and overlap handling") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const BallDroplet a = ball_at(3, 0.0, 1.0);
    const BallDroplet b = ball_at(3, 0.8, 1.0); // overlapping
    CHECK_THROWS_AS(riesz_cross_energy(a, b, params, QuadMethod::adaptive_1d),
                    MethodUnsupported);

    IntegralOptions opts;
    opts.seed = 12345;
    opts.mc_samples = 200'000;
    const auto q1 = riesz_cross_energy(a, b, params, QuadMethod::monte_carlo, opts);
    const auto q2 = riesz_cross_energy(a, b, params, QuadMethod::monte_carlo, opts);
    CHECK(q1.value == q2.value);
    CHECK(q1.error_estimate == q2.error_estimate);
    CHECK(std::isfinite(q1.value));
}

TEST_CASE("confinement closed form and shell quadrature") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const BallDroplet origin{{0.0, 0.0, 0.0}, unit_ball_volume(3)};
    const auto v = confinement_integral(origin, params);
    CHECK(rel_err(v.value, 2.0 * M_PI) < 1e-12);

    const auto shell = confinement_shell_quadrature(0.0, 1.0, params, 1e-12);
    CHECK(rel_err(shell.value, 2.0 * M_PI) < 1e-10);

    // Newtonian case: an exterior ball integrates to mass / |c| exactly.
    const auto far = confinement_integral(ball_at(3, 5.0, unit_ball_volume(3)), params);
    CHECK(rel_err(far.value, unit_ball_volume(3) / 5.0) < 1e-10);
}

TEST_CASE("confinement far-ball decay and monotonicity") {
    // Non-Newtonian exponent so the point-approximation error is nonzero.
    const ModelParams params{3, 2.0, 1.4, 0.0, 1.0};
    const double mass = 1.0;
    double prev_err = 0.0;
    for (double c : {50.0, 100.0, 200.0}) {
        const auto v = confinement_integral(ball_at(3, c, mass), params, QuadMethod::adaptive_1d,
                                            {1e-13, 0, 0});
        const auto ff = confinement_integral(ball_at(3, c, mass), params, QuadMethod::far_field);
        const double err = std::fabs(v.value - ff.value);
        CHECK(ff.error_estimate / err >= 1.0);
        CHECK(err * std::pow(c, params.p + 1.0) < 1.0); // paper-order constant finite
        if (prev_err > 0.0) CHECK(err < prev_err);
        prev_err = err;
    }

    const auto near = confinement_integral(ball_at(3, 2.0, mass), params);
    const auto farther = confinement_integral(ball_at(3, 4.0, mass), params);
    CHECK(farther.value < near.value);
}

TEST_CASE("confinement with the origin inside or on the droplet boundary") {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const double mass = unit_ball_volume(3); // radius 1

    // Origin strictly inside: integrable singularity, checked against the
    // independent Monte Carlo path.
    IntegralOptions opts;
    opts.seed = 5;
    const BallDroplet inside = ball_at(3, 0.4, mass);
    const auto quad = confinement_integral(inside, params);
    const auto mc = confinement_integral(inside, params, QuadMethod::monte_carlo, opts);
    CHECK(std::fabs(quad.value - mc.value) < 3.0 * mc.error_estimate);

    // Origin exactly on the boundary.
    const BallDroplet boundary = ball_at(3, 1.0, mass);
    const auto quad_b = confinement_integral(boundary, params);
    const auto mc_b = confinement_integral(boundary, params, QuadMethod::monte_carlo, opts);
    CHECK(std::fabs(quad_b.value - mc_b.value) < 3.0 * mc_b.error_estimate);
}
