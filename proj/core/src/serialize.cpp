#include "dropletlab/serialize.hpp"

#include "dropletlab/errors.hpp"

namespace dropletlab {

using nlohmann::json;

void to_json(json& j, const ModelParams& p) {
    j = json{{"d", p.d}, {"s", p.s}, {"p", p.p}, {"Z", p.Z}, {"M", p.M}};
}

void from_json(const json& j, ModelParams& p) {
    j.at("d").get_to(p.d);
    j.at("s").get_to(p.s);
    j.at("p").get_to(p.p);
    if (j.contains("Z")) j.at("Z").get_to(p.Z);
    if (j.contains("M")) j.at("M").get_to(p.M);
}

void to_json(json& j, const RieszConstants& k) {
    j = json{{"d", k.d},           {"s", k.s},   {"omega_d", k.omega_d},
             {"gamma_ds", k.gamma_ds}, {"C1", k.C1}, {"C2", k.C2},
             {"tolerance", k.tolerance}};
}

void from_json(const json& j, RieszConstants& k) {
    j.at("d").get_to(k.d);
    j.at("s").get_to(k.s);
    j.at("omega_d").get_to(k.omega_d);
    j.at("gamma_ds").get_to(k.gamma_ds);
    j.at("C1").get_to(k.C1);
    j.at("C2").get_to(k.C2);
    j.at("tolerance").get_to(k.tolerance);
}

void to_json(json& j, const QuadratureResult& q) {
    j = json{{"value", q.value},
             {"error_estimate", q.error_estimate},
             {"method", to_string(q.method)}};
}

void to_json(json& j, const MassPartition& m) { j = m.masses; }

void from_json(const json& j, MassPartition& m) {
    m.masses = j.get<std::vector<double>>();
}

void to_json(json& j, const PointConfiguration& c) {
    j = json::array();
    for (int i = 0; i < c.count(); ++i) {
        const auto pt = c.point(i);
        j.push_back(std::vector<double>(pt.begin(), pt.end()));
    }
}

void from_json(const json& j, PointConfiguration& c) {
    c.dim = 0;
    c.coords.clear();
    for (const auto& row : j) {
        const auto pt = row.get<std::vector<double>>();
        if (c.dim == 0) {
            c.dim = static_cast<int>(pt.size());
        } else if (static_cast<int>(pt.size()) != c.dim) {
            throw InvalidInput("PointConfiguration: inconsistent point dimensions");
        }
        c.coords.insert(c.coords.end(), pt.begin(), pt.end());
    }
}

void to_json(json& j, const EnergyParts& e) {
    j = json{{"repulsion", e.repulsion}, {"attraction", e.attraction}, {"total", e.total}};
}

void to_json(json& j, const OptimizerOptions& o) {
    j = json{{"starts", o.starts},
             {"max_iterations", o.max_iterations},
             {"gradient_tolerance", o.gradient_tolerance},
             {"step_shrink", o.step_shrink},
             {"seed", o.seed}};
}

void from_json(const json& j, OptimizerOptions& o) {
    if (j.contains("starts")) j.at("starts").get_to(o.starts);
    if (j.contains("max_iterations")) j.at("max_iterations").get_to(o.max_iterations);
    if (j.contains("gradient_tolerance")) j.at("gradient_tolerance").get_to(o.gradient_tolerance);
    if (j.contains("step_shrink")) j.at("step_shrink").get_to(o.step_shrink);
    if (j.contains("seed")) j.at("seed").get_to(o.seed);
}

void to_json(json& j, const ConfigResult& r) {
    json distances = json::array();
    for (int i = 0; i < r.config.count(); ++i) distances.push_back(r.config.point_norm(i));
    j = json{{"points", r.config},
             {"distances", distances},
             {"value", r.value},
             {"gradient_norm", r.gradient_norm},
             {"converged", r.converged},
             {"starts_used", r.starts_used}};
}

void to_json(json& j, const PartitionResult& r) {
    j = json{{"partition", r.partition}, {"value", r.value}, {"multipliers", r.multipliers}};
}

void to_json(json& j, const EnergyBreakdown& b) {
    j = json{{"perimeter", b.perimeter},
             {"riesz", b.riesz},
             {"confinement", b.confinement},
             {"total", b.total},
             {"error_estimate", b.error_estimate}};
}

void to_json(json& j, const ExpansionReport& r) {
    j = json{{"Z", r.Z}, {"exact", r.exact}, {"predicted", r.predicted}, {"residual", r.residual}};
}

void to_json(json& j, const ExpansionSweep& s) {
    j = json{{"reports", s.reports}, {"exact_match", s.exact_match}};
    if (!s.exact_match) {
        j["slope"] = s.slope;
        j["fit_rms"] = s.fit_rms;
    }
}

void to_json(json& j, const SubadditivityVerdict& v) {
    j = json{{"whole", v.whole},
             {"attached", v.attached},
             {"free", v.free},
             {"slack", v.slack},
             {"holds", v.holds}};
}

void to_json(json& j, const GeneralizedBallEnergy& g) {
    j = json{{"droplet_count", g.droplet_count}, {"partition", g.partition}, {"value", g.value}};
}

void to_json(json& j, const LimitSweep& s) {
    json rows = json::array();
    for (const LimitSweepRow& r : s.rows) {
        rows.push_back(json{{"Z", r.Z}, {"value", r.value}, {"gap", r.gap}});
    }
    j = json{{"zero_weight_value", s.zero_weight_value}, {"rows", rows}};
}

} // namespace dropletlab
