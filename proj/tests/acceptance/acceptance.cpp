// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "tlo/errors.hpp"
#include "tlo/evaluation.hpp"
#include "tlo/exact_oracle.hpp"
#include "tlo/generator.hpp"
#include "tlo/instance_io.hpp"
#include "tlo/model_stats.hpp"
#include "tlo/qubo.hpp"
#include "tlo/rng.hpp"
#include "tlo/sa_solver.hpp"
#include "tlo/solution_io.hpp"

namespace {

using namespace tlo;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Every plan of every small shape: compact count == simulated crane count.
Verdict oracle_equivalence() {
    const auto start = Clock::now();
    std::uint64_t instances = 0, plans = 0, mismatches = 0;
    for (int n = 1; n <= 6; ++n) {
        for (int wagons = 1; wagons <= 2; ++wagons) {
            for (int tiers = 1; tiers <= 3; ++tiers) {
                for (int total = n; total <= 2 * n; ++total) {
                    for (int train = wagons; train <= 5; ++train) {
                        for (std::uint64_t seed = 0; seed < 5; ++seed) {
                            const Instance generated = generate_instance({n, wagons, tiers, train, total, seed});
                            // Relaxed copy: no weight limit binds, so every
                            // length-compatible assignment is feasible.
                            InstanceData relaxed = generated.data();
                            relaxed.train_max_weight = 1'000'000'000;
                            for (auto& w : relaxed.wagons) {
                                w.max_weight = 1'000'000'000;
                                for (auto& b : w.configs) {
                                    for (auto& m : b.per_slot_max) m = 1'000'000'000;
                                }
                            }
                            for (const Instance& inst : {generated, Instance(relaxed)}) {
                                ++instances;
                                for_each_feasible(inst, [&](const Solution& s) {
                                    ++plans;
                                    if (count_rehandles_compact(inst, s) != simulate_loading(inst, s).rehandles) {
                                        ++mismatches;
                                    }
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 60.0,
            fmt("%llu instances, %llu feasible plans, %llu mismatches, %.1f s",
                static_cast<unsigned long long>(instances), static_cast<unsigned long long>(plans),
                static_cast<unsigned long long>(mismatches), t)};
}

Verdict model_size_reduction() {
    const auto start = Clock::now();
    const Instance inst = generate_instance({20, 8, 4, 19, 28, 7});
    const ModelComparison cmp = compare_models(inst);
    const double t = seconds_since(start);
    return {cmp.var_reduction_pct > 50.0 && cmp.constraint_reduction_pct > 80.0 && t < 1.0,
            fmt("vars A=%lld B=%lld (%.2f%% fewer), constraints A=%lld B=%lld (%.2f%% fewer), %.3f s",
                static_cast<long long>(cmp.a.vars.total()), static_cast<long long>(cmp.b.vars.total()),
                cmp.var_reduction_pct, static_cast<long long>(cmp.a.constraints.total()),
                static_cast<long long>(cmp.b.constraints.total()), cmp.constraint_reduction_pct, t)};
}

Verdict size_identities() {
    const auto start = Clock::now();
    Rng rng(2024);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        GeneratorSpec spec;
        spec.containers = static_cast<int>(rng.uniform_int(1, 40));
        spec.wagons = static_cast<int>(rng.uniform_int(1, 10));
        spec.tiers = static_cast<int>(rng.uniform_int(1, 5));
        spec.train_teu = static_cast<int>(rng.uniform_int(spec.wagons, 4 * spec.wagons));
        spec.total_teu = static_cast<int>(rng.uniform_int(spec.containers, 2 * spec.containers));
        spec.seed = rng.next_u64();
        const Instance inst = generate_instance(spec);
        const ModelComparison cmp = compare_models(inst);
        const auto pairs = static_cast<std::int64_t>(derive_blocking_pairs(inst).size());
        const auto w = static_cast<std::int64_t>(inst.wagon_count());
        const auto c = static_cast<std::int64_t>(inst.container_count());
        if (cmp.a.constraints.total() - cmp.b.constraints.total() != pairs * w) ++failures;
        if (cmp.a.vars.total() - cmp.b.vars.total() != c * w) ++failures;
    }
    const double t = seconds_since(start);
    return {failures == 0 && t < 5.0, fmt("100 instances, %d identity failures, %.2f s", failures, t)};
}

Verdict sa_optimality() {
    const auto start = Clock::now();
    int optimal = 0, infeasible = 0;
    std::string gaps;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = generate_instance({6, 1, 3, 2, 9, seed});
        SaParams params;  // 1000 / 0.95 / 100
        params.seed = seed;
        const SaResult result = solve(inst, params);
        if (!check_feasibility(inst, result.best_solution).empty()) ++infeasible;
        const SolverCheck check = verify_solver(inst, result);
        if (check.is_optimal) ++optimal;
        gaps += (gaps.empty() ? "" : ",") + std::to_string(check.gap);
    }
    const double t = seconds_since(start);
    return {optimal >= 18 && infeasible == 0 && t < 120.0,
            fmt("%d/20 optimal, %d infeasible, gaps [%s], %.1f s", optimal, infeasible, gaps.c_str(), t)};
}

Verdict metric_arithmetic() {
    using testing::box;
    InstanceData d;
    d.max_tiers = 3;
    d.train_max_weight = 100'000;
    d.containers = {box("a", 2, 10'000, 5), box("b", 1, 10'000, 5), box("c", 2, 10'000, 5),
                    box("d", 1, 10'000, 5), box("e", 2, 10'000, 5), box("f", 1, 10'000, 5)};
    d.stacks = {{"a", "b", "c"}, {"d", "e", "f"}};
    d.wagons = {testing::wagon("w", {2}, {{30'000}}, 60'000)};
    const Instance inst(d);
    Solution s = Solution::unloaded(inst);
    s.placement[2] = Placement{0, 0};
    const EvaluationReport r = evaluate(inst, s);
    const bool ok = inst.total_container_teu() == 9 && inst.total_slot_teu() == 2 && r.feasible() &&
                    std::abs(r.slot_utilization_pct - 100.0) <= 0.005 &&
                    std::abs(r.teu_utilization_pct - 22.22) <= 0.005;
    return {ok, fmt("L(%%) = %.2f, L-bar(%%) = %.4f", r.slot_utilization_pct, r.teu_utilization_pct)};
}

Verdict acceptance_statistics() {
    Rng rng(99);
    const double t = 37.5;
    int hits = 0, rejections = 0;
    for (int i = 0; i < 100000; ++i) hits += accept(t, t, rng) ? 1 : 0;
    for (int i = 0; i < 100000; ++i) rejections += accept(-1e-3 - rng.uniform01() * 100.0, t, rng) ? 0 : 1;
    const double freq = hits / 100000.0;
    return {std::abs(freq - std::exp(-1.0)) <= 0.01 && rejections == 0,
            fmt("accept(T, T) frequency %.4f (e^-1 = %.4f), %d rejections of improving moves", freq,
                std::exp(-1.0), rejections)};
}

Verdict qubo_exactness() {
    const auto start = Clock::now();
    // Part 1: energy - C0 == objective over every feasible plan.
    // Seeded instance-1 shapes, each also with loose capacities so that
    // every length-compatible plan takes part.
    QuboOptions options;
    options.weight_unit = 1;
    std::optional<std::int64_t> c0;
    std::uint64_t plans = 0, off = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance generated = generate_instance({6, 1, 3, 2, 9, seed});
        InstanceData loose = generated.data();
        loose.train_max_weight = 1'000'000;
        for (auto& w : loose.wagons) {
            w.max_weight = 1'000'000;
            for (auto& b : w.configs) {
                for (auto& m : b.per_slot_max) m = 1'000'000;
            }
        }
        for (const Instance& inst : {generated, Instance(loose)}) {
            const QuboBuild build = build_qubo(inst, options);
            for_each_feasible(inst, [&](const Solution& s) {
                ++plans;
                const std::int64_t diff =
                    energy_of(build.model, encode_solution(build.map, inst, s)) - objective_shifted(inst, s);
                if (!c0) c0 = diff;
                if (diff != *c0) ++off;
            });
        }
    }

    // Part 2: over all 2^n states of a reduced model, the minimizers decode
    // to exactly the optimal plans.
    const Instance reduced(testing::reduced_qubo_instance());
    QuboOptions coarse;
    coarse.weight_unit = 1000;
    const QuboBuild small = build_qubo(reduced, coarse);
    const OracleResult oracle = enumerate_optima(reduced);
    bool dominance = small.model.n <= 20;
    std::vector<Solution> decoded;
    if (dominance) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        std::vector<std::uint32_t> argmin;
        std::vector<std::uint8_t> bits(small.model.n);
        for (std::uint32_t mask = 0; mask < (1u << small.model.n); ++mask) {
            for (std::size_t i = 0; i < small.model.n; ++i) bits[i] = (mask >> i) & 1u;
            const std::int64_t e = energy_of(small.model, bits);
            if (e < best) {
                best = e;
                argmin.clear();
            }
            if (e == best) argmin.push_back(mask);
        }
        for (std::uint32_t mask : argmin) {
            for (std::size_t i = 0; i < small.model.n; ++i) bits[i] = (mask >> i) & 1u;
            try {
                decoded.push_back(decode_solution(small.map, reduced, bits));
            } catch (const QuboError&) {
                dominance = false;
            }
        }
        std::sort(decoded.begin(), decoded.end(),
                  [&](const Solution& a, const Solution& b) { return canonical_less(reduced, a, b); });
        dominance = dominance && best - c0.value_or(0) == oracle.optimum && decoded == oracle.optimal_solutions;
    }
    const double t = seconds_since(start);
    return {plans > 0 && off == 0 && dominance && t < 300.0,
            fmt("%llu plans, C0 = %lld, %llu deviations; reduced n = %zu, %zu minimizers vs %zu optima, %.1f s",
                static_cast<unsigned long long>(plans), static_cast<long long>(c0.value_or(0)),
                static_cast<unsigned long long>(off), small.model.n, decoded.size(),
                oracle.optimal_solutions.size(), t)};
}

Verdict determinism(const fs::path& dir) {
    auto run_cli = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        return cli::run(args, out, err);
    };
    std::vector<std::string> differing;
    for (const char* tag : {"a", "b"}) {
        const std::string d = (dir / tag).string();
        fs::create_directories(d);
        int rc = run_cli({"gen", "--containers", "12", "--wagons", "2", "--tiers", "4", "--train-teu", "5",
                          "--total-teu", "18", "--seed", "5", "-o", d + "/inst.json"});
        rc |= run_cli({"solve", d + "/inst.json", "--seed", "11", "-o", d + "/sol.json", "--trace", d + "/trace.csv"});
        rc |= run_cli({"qubo", d + "/inst.json", "-o", d + "/model.qubo"});
        rc |= run_cli({"qubo", d + "/inst.json", "--format", "json", "-o", d + "/model.json"});
        if (rc != 0) return {false, "a command failed"};
    }
    for (const char* name : {"inst.json", "sol.json", "trace.csv", "model.qubo", "model.json"}) {
        if (read_text_file(dir / "a" / name) != read_text_file(dir / "b" / name)) differing.emplace_back(name);
    }
    std::string list;
    for (const auto& n : differing) list += " " + n;
    return {differing.empty(), differing.empty() ? "instance, solution, trace and both QUBO exports byte-identical"
                                                 : "differing:" + list};
}

Verdict scaling_smoke(const fs::path& dir) {
    const auto start = Clock::now();
    const std::string inst_path = (dir / "i3.json").string();
    const std::string sol_path = (dir / "s3.json").string();
    std::ostringstream out, err;
    int rc = cli::run({"gen", "--containers", "20", "--wagons", "8", "--tiers", "4", "--train-teu", "19",
                       "--total-teu", "28", "--seed", "7", "-o", inst_path},
                      out, err);
    if (rc == 0) rc = cli::run({"solve", inst_path, "-o", sol_path}, out, err);
    const double t = seconds_since(start);
    if (rc != 0) return {false, "solve failed: " + err.str()};
    const Instance inst = load_instance(read_text_file(inst_path));
    const auto parsed = parse_solution(inst, read_text_file(sol_path));
    const EvaluationReport r = evaluate(inst, parsed.solution);
    const bool feasible = r.feasible() && parsed.violations.empty();
    return {feasible && r.teu_utilization_pct >= 60.0 && t < 900.0,
            fmt("feasible=%s, Obj. %lld, Reh. %lld, L(%%) %.2f, L-bar(%%) %.2f, P(%%) %.2f, %.1f s",
                feasible ? "yes" : "no", static_cast<long long>(r.objective_shifted),
                static_cast<long long>(r.rehandles), r.slot_utilization_pct, r.teu_utilization_pct, r.value_pct, t)};
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "tlo_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"1 compact rehandle count equals crane simulation (exhaustive, <=6 containers)", oracle_equivalence},
        {"2 model-size reduction on instance-3 shape (>50% vars, >80% constraints)", model_size_reduction},
        {"3 exact size identities on 100 generated instances", size_identities},
        {"4 annealing reaches the exact optimum on >=18/20 instance-1 shapes", sa_optimality},
        {"5 utilization arithmetic (100.00 / 22.22)", metric_arithmetic},
        {"6 acceptance-rule statistics", acceptance_statistics},
        {"7 QUBO exactness and penalty dominance", qubo_exactness},
        {"8 determinism of generated and exported artifacts", [&] { return determinism(dir); }},
        {"9 instance-3 scaling smoke test (feasible, >=60% TEU, <15 min)", [&] { return scaling_smoke(dir); }},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] AC%s :: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failed;
    }
    fs::remove_all(dir);
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
