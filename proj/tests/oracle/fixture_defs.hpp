#ifndef DROPLETLAB_TESTS_FIXTURE_DEFS_HPP
#define DROPLETLAB_TESTS_FIXTURE_DEFS_HPP

// The named oracle records frozen into tests/fixtures/oracle_records.jsonl.
// The generator binary and the verification test share these definitions:
// regeneration must reproduce the stored values bit-for-bit (all oracles
// are deterministic given their seed).

#include <cmath>
#include <string>
#include <vector>

#include "dropletlab/interaction.hpp"
#include "dropletlab/model.hpp"
#include "oracles.hpp"

namespace dropletlab::oracle {

inline BallDroplet unit_ball_droplet(int d) {
    return BallDroplet{std::vector<double>(d, 0.0), unit_ball_volume(d)};
}

inline BallDroplet offset_unit_ball(int d, double R) {
    std::vector<double> c(d, 0.0);
    c[0] = R;
    return BallDroplet{std::move(c), unit_ball_volume(d)};
}

inline std::vector<OracleRecord> build_fixture_records() {
    std::vector<OracleRecord> records;

    // Unit-ball self-energies, 1e7 samples (both balls coincident).
    records.push_back(mc_double_integral("gamma/d2s1", unit_ball_droplet(2),
                                         unit_ball_droplet(2), 1.0, 10'000'000, 101));
    records.push_back(mc_double_integral("gamma/d3s1", unit_ball_droplet(3),
                                         unit_ball_droplet(3), 1.0, 10'000'000, 102));
    records.push_back(mc_double_integral("gamma/d3s2", unit_ball_droplet(3),
                                         unit_ball_droplet(3), 2.0, 10'000'000, 103));
    records.push_back(mc_double_integral("gamma/d4s2", unit_ball_droplet(4),
                                         unit_ball_droplet(4), 2.0, 10'000'000, 104));

    // Cross energies of disjoint unit balls, 2e6 samples.
    records.push_back(mc_double_integral("cross/d3s2R6", unit_ball_droplet(3),
                                         offset_unit_ball(3, 6.0), 2.0, 2'000'000, 201));
    records.push_back(mc_double_integral("cross/d3s1R5", unit_ball_droplet(3),
                                         offset_unit_ball(3, 5.0), 1.0, 2'000'000, 202));
    records.push_back(mc_double_integral("cross/d2s1R4", unit_ball_droplet(2),
                                         offset_unit_ball(2, 4.0), 1.0, 2'000'000, 203));
    // Far-separation instance for the far-field self-consistency check.
    records.push_back(mc_double_integral("cross/d3s2R10", unit_ball_droplet(3),
                                         offset_unit_ball(3, 10.0), 2.0, 2'000'000, 204));

    // Two-body energy minimum over the separation (closed form r* = 4).
    auto two_body = [](double m0, double m1, double s, double p) {
        return [m0, m1, s, p](double r) {
            return 2.0 * m0 * m1 * std::pow(r, -s) - m1 * std::pow(r, -p);
        };
    };
    records.push_back(
        grid_minimize_1d("twobody/d3s2p1", two_body(1.0, 1.0, 2.0, 1.0), 0.1, 100.0, 4000));

    // Random two-body instances; draws recorded in the inputs.
    {
        RngStream stream(7, "fixtures/twobody/random");
        for (int k = 0; k < 5; ++k) {
            const double p = stream.uniform(0.3, 1.1);
            const double s = stream.uniform(p + 0.4, 1.9);
            const double m0 = stream.uniform(0.3, 2.5);
            const double m1 = stream.uniform(0.3, 2.5);
            OracleRecord rec = grid_minimize_1d("twobody/random/" + std::to_string(k),
                                                two_body(m0, m1, s, p), 0.05, 400.0, 8000);
            rec.inputs["m0"] = m0;
            rec.inputs["m1"] = m1;
            rec.inputs["s"] = s;
            rec.inputs["p"] = p;
            records.push_back(rec);
        }
    }

    // Two-part mass split of M = 3 at (d, s) = (3, 2): grid over the first
    // part's mass.
    {
        const RieszConstants& k = riesz_constants(3, 2.0);
        const double M = 3.0;
        auto two_part = [&k, M](double m) {
            return single_ball_energy(m, k) + single_ball_energy(M - m, k);
        };
        OracleRecord rec =
            grid_minimize_1d("partition/two-part/M3-d3s2", two_part, 1e-6 * M, 0.5 * M, 6000);
        rec.inputs["M"] = M;
        records.push_back(rec);
    }

    // Split gap sign table bracketing the two-part threshold for (3, 2).
    {
        const RieszConstants& k = riesz_constants(3, 2.0);
        OracleRecord rec;
        rec.name = "splitgap/signs-d3s2";
        std::vector<double> masses{0.4, 0.8, 1.5, 4.0};
        std::vector<double> gaps;
        for (double M : masses) {
            auto two_part = [&k, M](double m) {
                return single_ball_energy(m, k) + single_ball_energy(M - m, k);
            };
            OracleRecord inner =
                grid_minimize_1d("splitgap/inner", two_part, 1e-6 * M, 0.5 * M, 6000);
            gaps.push_back(inner.extra["min_value"].get<double>() -
                           single_ball_energy(M, k));
        }
        rec.inputs["masses"] = masses;
        rec.extra["gaps"] = gaps;
        rec.value = gaps.back();
        rec.samples = 6000;
        records.push_back(rec);
    }

    // Central differences on a quadratic are exact up to rounding.
    {
        auto quadratic = [](const std::vector<double>& x) {
            double v = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                v += (1.0 + 0.5 * i) * x[i] * x[i] + 0.25 * i * x[i];
            }
            return v;
        };
        records.push_back(finite_difference_gradient("fd/quadratic", quadratic,
                                                     {0.7, -1.3, 2.1}, 1e-3));
    }

    // Finite-difference gradients of the interaction energy at seeded
    // random configurations.
    {
        RngStream stream(11, "fixtures/fd/interaction");
        for (int k = 0; k < 3; ++k) {
            const int n = 3;
            ModelParams params{3, 2.0, 1.0, 0.0, 4.0};
            MassPartition mp{{stream.uniform(0.4, 2.0), stream.uniform(0.4, 2.0),
                              stream.uniform(0.4, 2.0), stream.uniform(0.4, 2.0)}};
            params.M = mp.total();
            std::vector<double> flat;
            for (int i = 0; i < n; ++i) {
                const auto dir = stream.uniform_direction(3);
                const double r = stream.uniform(2.0, 8.0);
                for (double c : dir) flat.push_back(r * c);
            }
            auto f = [mp, params](const std::vector<double>& coords) {
                PointConfiguration cfg;
                cfg.dim = 3;
                cfg.coords = coords;
                return interaction_energy(mp, cfg, params).total;
            };
            OracleRecord rec = finite_difference_gradient(
                "fd/interaction/" + std::to_string(k), f, flat, 1e-5);
            rec.inputs["masses"] = mp.masses;
            records.push_back(rec);
        }
    }

    return records;
}

} // namespace dropletlab::oracle

#endif
