// Command-line front end: every subcommand validates its parameters, runs
// one experiment, and emits a JSON document {spec, results, errors} whose
// spec block echoes all resolved inputs (defaults materialized) so a run
// can be replayed from its artifact alone. Sweeps additionally write CSV
// with the stable header Z,exact,predicted,residual.
//
// Exit status: 0 success, 2 invalid usage/parameters, 3 computation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dropletlab/asymptotics.hpp"
#include "dropletlab/errors.hpp"
#include "dropletlab/serialize.hpp"

using nlohmann::json;
using namespace dropletlab;

namespace {

struct CommonSpec {
    ModelParams params;
    OptimizerOptions opts;
    double tol = kDefaultQuadTol;
    std::vector<double> masses;
    PointConfiguration points;
    std::vector<double> zgrid;
    double M = 1.0;
    int N = 0;
    int Nmax = -1;
    double mprime = 0.0;
    double Mlo = 0.0;
    double Mhi = 0.0;
    std::string out;
    std::string config_path;
};

std::string csv_sibling(const std::string& out) {
    const auto dot = out.rfind('.');
    if (dot == std::string::npos) return out + ".csv";
    return out.substr(0, dot) + ".csv";
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_csv(const std::string& path, const std::vector<ExpansionReport>& rows) {
    std::ofstream file(path);
    if (!file) throw Error("cannot open CSV output file: " + path);
    file << "Z,exact,predicted,residual\n";
    for (const auto& r : rows) {
        file << format_number(r.Z) << ',' << format_number(r.exact) << ','
             << format_number(r.predicted) << ',' << format_number(r.residual) << '\n';
    }
}

void emit(const CommonSpec& spec, json document) {
    const std::string text = document.dump(2) + "\n";
    if (spec.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(spec.out);
        if (!file) throw Error("cannot open output file: " + spec.out);
        file << text;
    }
}

// The resolved experiment inputs; the output path is deliberately not part
// of the spec so reruns into different files stay byte-identical.
json spec_block(const std::string& command, const CommonSpec& spec) {
    json j{{"command", command},
           {"params", spec.params},
           {"options", spec.opts},
           {"tol", spec.tol}};
    if (!spec.masses.empty()) j["masses"] = spec.masses;
    if (spec.points.count() > 0) j["points"] = spec.points;
    if (!spec.zgrid.empty()) j["zgrid"] = spec.zgrid;
    return j;
}

// Fill spec fields from a JSON config document; explicit flags override
// these afterwards because CLI11 only assigns bound variables when the
// flag is present.
void load_config(CommonSpec& spec) {
    if (spec.config_path.empty()) return;
    std::ifstream file(spec.config_path);
    if (!file) throw InvalidInput("cannot open config file: " + spec.config_path);
    json j;
    file >> j;
    if (j.contains("d")) spec.params.d = j["d"].get<int>();
    if (j.contains("s")) spec.params.s = j["s"].get<double>();
    if (j.contains("p")) spec.params.p = j["p"].get<double>();
    if (j.contains("Z")) spec.params.Z = j["Z"].get<double>();
    if (j.contains("M")) spec.M = j["M"].get<double>();
    if (j.contains("masses")) spec.masses = j["masses"].get<std::vector<double>>();
    if (j.contains("points")) spec.points = j["points"].get<PointConfiguration>();
    if (j.contains("zgrid")) spec.zgrid = j["zgrid"].get<std::vector<double>>();
    if (j.contains("N")) spec.N = j["N"].get<int>();
    if (j.contains("Nmax")) spec.Nmax = j["Nmax"].get<int>();
    if (j.contains("starts")) spec.opts.starts = j["starts"].get<int>();
    if (j.contains("seed")) spec.opts.seed = j["seed"].get<RngSeed>();
    if (j.contains("tol")) spec.tol = j["tol"].get<double>();
    if (j.contains("mprime")) spec.mprime = j["mprime"].get<double>();
    if (j.contains("Mlo")) spec.Mlo = j["Mlo"].get<double>();
    if (j.contains("Mhi")) spec.Mhi = j["Mhi"].get<double>();
    if (j.contains("out") && spec.out.empty()) spec.out = j["out"].get<std::string>();
}

MassPartition masses_or_throw(const CommonSpec& spec) {
    if (spec.masses.empty()) throw InvalidInput("--masses is required for this command");
    MassPartition mp{spec.masses};
    mp.validate();
    return mp;
}

json run_constants(const CommonSpec& spec) {
    spec.params.validate();
    return json(riesz_constants(spec.params.d, spec.params.s, spec.tol));
}

json run_energy(const CommonSpec& spec) {
    MassPartition mp = masses_or_throw(spec);
    GeneralizedConfig gc{mp, spec.points, spec.params.Z};
    if (spec.points.count() + 1 != mp.count()) {
        throw InvalidInput("energy: need one point per mass beyond the anchor "
                           "(supply points via --config)");
    }
    json results;
    results["breakdown"] = ball_configuration_energy(gc, spec.params, spec.tol);
    results["predicted"] = predicted_energy(gc, spec.params);
    if (gc.droplet_count() > 0 && spec.params.Z > 0.0) {
        results["interaction"] = interaction_energy(mp, spec.points, spec.params);
    }
    return results;
}

json run_optimize(const CommonSpec& spec) {
    MassPartition mp = masses_or_throw(spec);
    return json(minimize_configuration(mp, spec.params, spec.opts));
}

json run_partition(const CommonSpec& spec) {
    json results;
    if (spec.Nmax >= 0) {
        auto [n, partition] = optimal_droplet_count(spec.M, spec.Nmax, spec.params, spec.opts);
        results = json(partition);
        results["droplet_count"] = n;
    } else {
        results = json(minimize_partition(spec.M, spec.N, spec.params, spec.opts));
    }
    return results;
}

json run_sweep(const CommonSpec& spec, std::vector<ExpansionReport>& csv_rows) {
    if (spec.zgrid.empty()) throw InvalidInput("--zgrid is required for sweep");
    const int n_max = spec.Nmax >= 0 ? spec.Nmax : 8;
    LimitSweep sweep =
        zero_attraction_limit_sweep(spec.M, spec.params, spec.zgrid, spec.opts, n_max);
    for (const LimitSweepRow& row : sweep.rows) {
        csv_rows.push_back({row.Z, row.value, sweep.zero_weight_value, -row.gap});
    }
    return json(sweep);
}

json run_expansion(const CommonSpec& spec, std::vector<ExpansionReport>& csv_rows) {
    MassPartition mp = masses_or_throw(spec);
    if (spec.zgrid.empty()) throw InvalidInput("--zgrid is required for expansion");
    ExpansionSweep sweep =
        expansion_residual_sweep(mp, spec.points, spec.params, spec.zgrid, spec.tol);
    csv_rows = sweep.reports;
    return json(sweep);
}

json run_threshold(const CommonSpec& spec) {
    spec.params.validate();
    const RieszConstants& constants = riesz_constants(spec.params.d, spec.params.s);
    double lo = spec.Mlo;
    double hi = spec.Mhi;
    if (!(lo > 0.0)) lo = mass_thresholds(constants).inflection_mass;
    if (!(hi > lo)) {
        hi = 2.0 * lo;
        int doublings = 0;
        // Strictly negative: a doubling can land exactly on the threshold.
        while (!(split_gap(hi, constants) < 0.0) && doublings++ < 40) hi *= 2.0;
    }
    const double threshold = split_threshold(constants, lo, hi);
    return json{{"threshold", threshold}, {"bracket", {lo, hi}}};
}

json run_subadd(const CommonSpec& spec) {
    const int n_max = spec.Nmax >= 0 ? spec.Nmax : 8;
    return json(
        subadditivity_check(spec.M, spec.mprime, spec.params, spec.opts, n_max));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dropletlab: ball-model energies, droplet optimization and small-weight "
                 "asymptotics for a confined liquid drop system"};
    app.require_subcommand(1);

    CommonSpec spec;
    if (const char* env_tol = std::getenv("DROPLETLAB_TOL")) {
        try {
            spec.tol = std::stod(env_tol);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable DROPLETLAB_TOL\n";
        }
    }

    // Config file values are applied before parsing; explicit flags win.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") spec.config_path = argv[i + 1];
    }
    try {
        load_config(spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto add_common = [&spec](CLI::App* cmd) {
        cmd->add_option("--d", spec.params.d, "spatial dimension (>= 2)");
        cmd->add_option("--s", spec.params.s, "Riesz repulsion exponent, p < s < d");
        cmd->add_option("--p", spec.params.p, "confinement exponent, 0 < p < s");
        cmd->add_option("--Z", spec.params.Z, "attraction weight (>= 0)");
        cmd->add_option("--tol", spec.tol, "relative quadrature tolerance");
        cmd->add_option("--seed", spec.opts.seed, "top-level RNG seed");
        cmd->add_option("--starts", spec.opts.starts, "multistart count");
        cmd->add_option("--out", spec.out, "output JSON path (stdout if omitted)");
        cmd->add_option("--config", spec.config_path, "JSON config file; flags override");
    };

    CLI::App* constants = app.add_subcommand("constants", "single-ball energy constants");
    add_common(constants);

    CLI::App* energy = app.add_subcommand("energy", "ball-restricted energy of a configuration");
    add_common(energy);
    energy->add_option("--masses", spec.masses, "comma list m0,m1,...")->delimiter(',');

    CLI::App* optimize = app.add_subcommand("optimize", "minimize the interaction energy");
    add_common(optimize);
    optimize->add_option("--masses", spec.masses, "comma list m0,m1,...")->delimiter(',');

    CLI::App* partition = app.add_subcommand("partition", "optimal mass partition");
    add_common(partition);
    partition->add_option("--M", spec.M, "total mass");
    partition->add_option("--N", spec.N, "droplet count beyond the anchor");
    partition->add_option("--Nmax", spec.Nmax, "search droplet counts 0..Nmax");

    CLI::App* sweep = app.add_subcommand("sweep", "generalized energy vs weight Z");
    add_common(sweep);
    sweep->add_option("--M", spec.M, "total mass");
    sweep->add_option("--Nmax", spec.Nmax, "droplet count cap (default 8)");
    sweep->add_option("--zgrid", spec.zgrid, "comma list of weights")->delimiter(',');

    CLI::App* expansion = app.add_subcommand("expansion", "exact vs three-term expansion");
    add_common(expansion);
    expansion->add_option("--masses", spec.masses, "comma list m0,m1,...")->delimiter(',');
    expansion->add_option("--zgrid", spec.zgrid, "comma list of weights")->delimiter(',');

    CLI::App* threshold = app.add_subcommand("threshold", "two-part splitting threshold mass");
    add_common(threshold);
    threshold->add_option("--Mlo", spec.Mlo, "bracket lower end (default: inflection mass)");
    threshold->add_option("--Mhi", spec.Mhi, "bracket upper end (default: auto)");

    CLI::App* subadd = app.add_subcommand("subadd", "subadditivity slack of the generalized energy");
    add_common(subadd);
    subadd->add_option("--M", spec.M, "total mass");
    subadd->add_option("--mprime", spec.mprime, "attached mass m', 0 < m' < M");
    subadd->add_option("--Nmax", spec.Nmax, "droplet count cap (default 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json document;
    document["spec"] = spec_block(command, spec);
    document["spec"]["M"] = spec.M;
    document["spec"]["N"] = spec.N;
    document["spec"]["Nmax"] = spec.Nmax;
    if (command == "subadd") document["spec"]["mprime"] = spec.mprime;
    document["errors"] = json::array();

    try {
        std::vector<ExpansionReport> csv_rows;
        if (command == "constants") {
            document["results"] = run_constants(spec);
        } else if (command == "energy") {
            document["results"] = run_energy(spec);
        } else if (command == "optimize") {
            document["results"] = run_optimize(spec);
        } else if (command == "partition") {
            document["results"] = run_partition(spec);
        } else if (command == "sweep") {
            document["results"] = run_sweep(spec, csv_rows);
        } else if (command == "expansion") {
            document["results"] = run_expansion(spec, csv_rows);
        } else if (command == "threshold") {
            document["results"] = run_threshold(spec);
        } else if (command == "subadd") {
            document["results"] = run_subadd(spec);
        }
        if (!csv_rows.empty() && !spec.out.empty()) {
            write_csv(csv_sibling(spec.out), csv_rows);
        }
        emit(spec, std::move(document));
        return 0;
    } catch (const InvalidInput& e) {
        document["results"] = nullptr;
        document["errors"].push_back(json{{"type", "invalid-input"}, {"message", e.what()}});
        emit(spec, std::move(document));
        return 2;
    } catch (const Error& e) {
        document["results"] = nullptr;
        document["errors"].push_back(json{{"type", "computation"}, {"message", e.what()}});
        emit(spec, std::move(document));
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
