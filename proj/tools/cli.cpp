#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlo/errors.hpp"
#include "tlo/evaluation.hpp"
#include "tlo/exact_oracle.hpp"
#include "tlo/generator.hpp"
#include "tlo/instance_io.hpp"
#include "tlo/model_stats.hpp"
#include "tlo/qubo.hpp"
#include "tlo/sa_solver.hpp"
#include "tlo/solution_io.hpp"

namespace tlo::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Files written without an explicit path land in $TLO_OUTPUT_DIR (or the
// working directory).
fs::path output_path(const std::string& explicit_path, const char* default_name) {
    if (!explicit_path.empty()) return explicit_path;
    const char* dir = std::getenv("TLO_OUTPUT_DIR");
    return (dir && *dir) ? fs::path(dir) / default_name : fs::path(default_name);
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string shape_header() { return "cont wagons tiers train_teu total_teu"; }

std::string shape_row(const Instance& instance) {
    return std::to_string(instance.container_count()) + " " + std::to_string(instance.wagon_count()) +
           " " + std::to_string(instance.max_tiers()) + " " + std::to_string(instance.total_slot_teu()) +
           " " + std::to_string(instance.total_container_teu());
}

ordered_json shape_json(const Instance& instance) {
    ordered_json j;
    j["containers"] = instance.container_count();
    j["wagons"] = instance.wagon_count();
    j["tiers"] = instance.max_tiers();
    j["train_teu"] = instance.total_slot_teu();
    j["total_teu"] = instance.total_container_teu();
    return j;
}

ordered_json report_json(const EvaluationReport& r) {
    ordered_json j;
    j["feasible"] = r.feasible();
    ordered_json violations = ordered_json::array();
    for (const auto& v : r.violations) {
        ordered_json jv;
        jv["kind"] = std::string(to_string(v.kind));
        jv["subject"] = v.subject;
        if (v.amount) jv["amount"] = *v.amount;
        violations.push_back(std::move(jv));
    }
    j["violations"] = std::move(violations);
    j["rehandles"] = r.rehandles;
    j["rehandle_cost"] = r.rehandle_cost;
    j["value_loaded"] = r.value_loaded;
    j["objective_paper"] = r.objective_paper;
    j["objective_shifted"] = r.objective_shifted;
    j["slot_utilization_pct"] = r.slot_utilization_pct;
    j["teu_utilization_pct"] = r.teu_utilization_pct;
    j["value_pct"] = r.value_pct;
    return j;
}

std::string results_header() { return "Obj. Reh. L(%) L̄(%) P(%) Time(s)"; }

std::string results_row(const EvaluationReport& r, double seconds) {
    return std::to_string(r.objective_shifted) + " " + std::to_string(r.rehandles) + " " +
           fixed2(r.slot_utilization_pct) + " " + fixed2(r.teu_utilization_pct) + " " +
           fixed2(r.value_pct) + " " + fixed2(seconds);
}

Instance read_instance(const std::string& path) { return load_instance(read_text_file(path)); }

struct Options {
    bool json = false;

    // gen
    GeneratorSpec spec;
    std::string output;

    std::string instance_path;
    std::string solution_path;

    // solve
    SaParams sa;
    int runs = 1;
    std::string trace_path;

    // eval
    std::string events_path;

    // qubo
    std::string format = "coord";
    Mass weight_unit = 100;
    std::optional<std::int64_t> penalty;
    bool check = false;

    // oracle
    double limit = kDefaultOracleBudget;
};

int cmd_gen(const Options& o, std::ostream& out) {
    const Instance instance = generate_instance(o.spec);
    const fs::path path = output_path(o.output, "instance.json");
    write_text_file(path, serialize_instance(instance));
    if (o.json) {
        ordered_json j = shape_json(instance);
        j["path"] = path.string();
        out << j.dump(2) << "\n";
    } else {
        out << shape_header() << "\n" << shape_row(instance) << "\n";
        out << "wrote " << path.string() << "\n";
    }
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const Instance instance = read_instance(o.instance_path);
    const auto pairs = derive_blocking_pairs(instance).size();
    if (o.json) {
        ordered_json j = shape_json(instance);
        j["slots"] = instance.total_slots();
        j["blocking_pairs"] = pairs;
        out << j.dump(2) << "\n";
    } else {
        out << shape_header() << "\n" << shape_row(instance) << "\n";
        out << "slots " << instance.total_slots() << "\nblocking pairs " << pairs << "\nvalid\n";
    }
    return kOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance instance = read_instance(o.instance_path);
    const SaResult result = o.runs > 1 ? solve_runs(instance, o.sa, o.runs) : solve(instance, o.sa);
    if (!result.best_report.feasible()) {
        err << "internal error: solver produced an infeasible plan\n";
        return kInfeasible;
    }
    const fs::path path = output_path(o.output, "solution.json");
    write_text_file(path, serialize_solution(instance, result.best_solution));
    if (!o.trace_path.empty()) write_text_file(o.trace_path, trace_to_csv(result.trace));

    if (o.json) {
        ordered_json j = report_json(result.best_report);
        j["seed"] = result.seed;
        j["levels"] = result.trace.size();
        j["evaluations"] = result.evaluations;
        j["time_s"] = result.wall_time;
        j["path"] = path.string();
        out << j.dump(2) << "\n";
    } else {
        out << results_header() << "\n" << results_row(result.best_report, result.wall_time) << "\n";
        out << "seed " << result.seed << ", levels " << result.trace.size() << ", evaluations "
            << result.evaluations << "\nwrote " << path.string() << "\n";
    }
    return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const Instance instance = read_instance(o.instance_path);
    ParsedSolution parsed = parse_solution(instance, read_text_file(o.solution_path));
    EvaluationReport report = evaluate(instance, parsed.solution);
    report.violations.insert(report.violations.begin(), parsed.violations.begin(), parsed.violations.end());

    if (report.feasible() && !o.events_path.empty()) {
        const auto sim = simulate_loading(instance, parsed.solution);
        write_text_file(o.events_path, events_to_json_lines(instance, sim.events));
    }

    if (o.json) {
        out << report_json(report).dump(2) << "\n";
    } else {
        out << "feasible " << (report.feasible() ? "yes" : "no") << "\n";
        for (const auto& v : report.violations) out << "violation " << describe(v) << "\n";
        out << "Obj. " << report.objective_shifted << "\n";
        out << "Obj. (incl. value constant) " << report.objective_paper << "\n";
        out << "Reh. " << report.rehandles << "\n";
        out << "L(%) " << fixed2(report.slot_utilization_pct) << "\n";
        out << "L̄(%) " << fixed2(report.teu_utilization_pct) << "\n";
        out << "P(%) " << fixed2(report.value_pct) << "\n";
    }
    return report.feasible() ? kOk : kInfeasible;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const Instance instance = read_instance(o.instance_path);
    const ModelComparison cmp = compare_models(instance);
    if (o.json) {
        out << comparison_json(cmp);
        return kOk;
    }
    out << comparison_markdown(cmp);
    out << "variable reduction > 50%: " << (cmp.var_reduction_pct > 50.0 ? "yes" : "no") << "\n";
    out << "constraint reduction > 80%: " << (cmp.constraint_reduction_pct > 80.0 ? "yes" : "no") << "\n";
    return kOk;
}

int cmd_qubo(const Options& o, std::ostream& out) {
    const Instance instance = read_instance(o.instance_path);
    QuboOptions options;
    options.weight_unit = o.weight_unit;
    options.penalty = o.penalty;
    const QuboBuild build = build_qubo(instance, options);
    const QuboFormat format = o.format == "json" ? QuboFormat::Json : QuboFormat::CoordinateText;
    const fs::path path = output_path(o.output, format == QuboFormat::Json ? "model.qubo.json" : "model.qubo");
    write_text_file(path, export_qubo(build.model, build.map, instance, format));

    ordered_json j;
    j["n"] = build.model.n;
    j["terms"] = build.model.coefficients.size();
    j["offset"] = build.model.offset;
    ordered_json penalties = ordered_json::object();
    for (const auto& [family, p] : build.model.penalties) penalties[std::string(to_string(family))] = p;
    j["penalties"] = penalties;
    j["path"] = path.string();

    if (o.check) {
        const OracleResult oracle = enumerate_optima(instance, o.limit);
        const auto bits = encode_solution(build.map, instance, oracle.optimal_solutions.front());
        const std::int64_t energy = energy_of(build.model, bits);
        j["check"] = {{"optimum", oracle.optimum}, {"energy", energy}, {"c0", energy - oracle.optimum}};
    }

    if (o.json) {
        out << j.dump(2) << "\n";
    } else {
        out << "n " << build.model.n << "\nterms " << build.model.coefficients.size() << "\noffset "
            << build.model.offset << "\n";
        for (const auto& [family, p] : build.model.penalties) out << "penalty " << to_string(family) << " " << p << "\n";
        if (o.check) {
            out << "check optimum " << j["check"]["optimum"] << " energy " << j["check"]["energy"]
                << " C0 " << j["check"]["c0"] << "\n";
        }
        out << "wrote " << path.string() << "\n";
    }
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const Instance instance = read_instance(o.instance_path);
    const OracleResult result = enumerate_optima(instance, o.limit);
    const fs::path path = output_path(o.output, "optima.json");
    const std::string report = oracle_report_json(instance, result);
    write_text_file(path, report);
    if (o.json) {
        out << report;
    } else {
        out << "optimum " << result.optimum << "\noptima " << result.optimal_solutions.size()
            << "\nfeasible " << result.enumerated << "\ncandidates " << result.search_space << "\nwrote "
            << path.string() << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Train load optimization toolkit", "tlo"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "Generate a seeded instance of a given shape");
    gen->add_option("--containers", o.spec.containers, "Container count")->required();
    gen->add_option("--wagons", o.spec.wagons, "Wagon count")->required();
    gen->add_option("--tiers", o.spec.tiers, "Maximum tiers per stack")->required();
    gen->add_option("--train-teu", o.spec.train_teu, "Total slot TEUs on the train")->required();
    gen->add_option("--total-teu", o.spec.total_teu, "Total container TEUs in the yard")->required();
    gen->add_option("--seed", o.spec.seed, "Random seed")->default_val(0);
    gen->add_option("-o,--output", o.output, "Instance file to write");

    auto* validate = app.add_subcommand("validate", "Load an instance and report its shape");
    validate->add_option("instance", o.instance_path, "Instance JSON file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance with simulated annealing");
    solve_cmd->add_option("instance", o.instance_path, "Instance JSON file")->required();
    solve_cmd->add_option("--t-initial", o.sa.t_initial, "Starting temperature")->default_val(1000.0);
    solve_cmd->add_option("--t-final", o.sa.t_final, "Stop once the temperature falls below this")->default_val(1e-3);
    solve_cmd->add_option("--cooling", o.sa.cooling_rate, "Geometric cooling factor in (0, 1)")->default_val(0.95);
    solve_cmd->add_option("--iters", o.sa.iters_per_level, "Neighbor evaluations per temperature level")->default_val(100);
    solve_cmd->add_option("--retries", o.sa.max_neighbor_retries, "Draws per neighbor before giving up")->default_val(50);
    solve_cmd->add_option("--seed", o.sa.seed, "Random seed")->default_val(0);
    solve_cmd->add_option("--runs", o.runs, "Independent seeded runs (seed, seed+1, ...)")->default_val(1);
    solve_cmd->add_option("-o,--output", o.output, "Solution file to write");
    solve_cmd->add_option("--trace", o.trace_path, "Write the per-level trace as CSV");

    auto* eval = app.add_subcommand("eval", "Check and score a loading plan");
    eval->add_option("instance", o.instance_path, "Instance JSON file")->required();
    eval->add_option("solution", o.solution_path, "Solution JSON file")->required();
    eval->add_option("--events", o.events_path, "Write the crane event log (JSON lines)");

    auto* stats = app.add_subcommand("stats", "Compare conventional and compact model sizes");
    stats->add_option("instance", o.instance_path, "Instance JSON file")->required();

    auto* qubo = app.add_subcommand("qubo", "Export the compact model as a QUBO");
    qubo->add_option("instance", o.instance_path, "Instance JSON file")->required();
    qubo->add_option("--format", o.format)->check(CLI::IsMember({"coord", "json"}))->default_val("coord");
    qubo->add_option("--weight-unit", o.weight_unit, "Mass discretization in kg")->default_val(100);
    qubo->add_option("--penalty", o.penalty, "Uniform penalty weight");
    qubo->add_option("-o,--output", o.output, "QUBO file to write");
    qubo->add_flag("--check", o.check, "Verify energy of the exact optimum against its objective");
    qubo->add_option("--limit", o.limit, "Enumeration budget for --check");

    auto* oracle = app.add_subcommand("oracle", "Enumerate all feasible plans and report the optima");
    oracle->add_option("instance", o.instance_path, "Instance JSON file")->required();
    oracle->add_option("--limit", o.limit, "Raw search space budget")->default_val(kDefaultOracleBudget);
    oracle->add_option("-o,--output", o.output, "Optima report to write");

    for (auto* sub : {gen, validate, solve_cmd, eval, stats, qubo, oracle}) {
        sub->add_flag("--json", o.json, "Machine-readable output");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(o, out);
        if (validate->parsed()) return cmd_validate(o, out);
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        if (eval->parsed()) return cmd_eval(o, out);
        if (stats->parsed()) return cmd_stats(o, out);
        if (qubo->parsed()) return cmd_qubo(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const QuboError& e) {
        err << "error: " << e.what() << "\nhint: retry with a larger --weight-unit\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace tlo::cli
