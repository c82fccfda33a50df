#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "fixtures.hpp"
#include "tlo/errors.hpp"
#include "tlo/exact_oracle.hpp"
#include "tlo/generator.hpp"
#include "tlo/qubo.hpp"
#include "tlo/rng.hpp"

namespace tlo {
namespace {

using testing::box;
using testing::wagon;

// Naive dense evaluator: materialize the upper-triangular matrix.
std::int64_t dense_energy(const QuboModel& m, const std::vector<std::uint8_t>& x) {
    std::vector<std::vector<std::int64_t>> q(m.n, std::vector<std::int64_t>(m.n, 0));
    for (const auto& [key, v] : m.coefficients) q[key.first][key.second] = v;
    std::int64_t e = m.offset;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i; j < m.n; ++j) e += q[i][j] * x[i] * x[j];
    }
    return e;
}

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.index(2));
    return bits;
}

InstanceData tiny() {
    InstanceData d;
    d.rehandle_unit_cost = 1;
    d.train_max_weight = 5000;
    d.containers = {box("a", 1, 1000, 7)};
    d.stacks = {{"a"}};
    d.wagons = {wagon("w", {1}, {{3000}}, 4000)};
    return d;
}

TEST(Qubo, TinyInstanceLayoutAndEnergies) {
    const Instance inst(tiny());
    QuboOptions opt;
    opt.weight_unit = 1000;
    const QuboBuild b = build_qubo(inst, opt);
    std::size_t slack_bits = 0;
    for (const auto& r : b.map.slacks) slack_bits += r.width;
    // assign_once 1 + slot_once 1 + slot_weight 2 + wagon 3 + train 3
    EXPECT_EQ(slack_bits, 10u);
    EXPECT_EQ(b.model.n, 2 + slack_bits);
    EXPECT_EQ(b.map.assignment_index(0, 0, 0), 0u);
    EXPECT_EQ(b.map.config_index(0, 0), 1u);

    Solution load = Solution::unloaded(inst);
    load.placement[0] = Placement{0, 0};
    EXPECT_EQ(energy_of(b.model, encode_solution(b.map, inst, load)), -7);
    EXPECT_EQ(energy_of(b.model, encode_solution(b.map, inst, Solution::unloaded(inst))), 0);
}

TEST(Qubo, AllZeroVectorIsTheOffsetAndEqualsThePenaltyMass) {
    const Instance inst(tiny());
    QuboOptions opt;
    opt.weight_unit = 1000;
    const QuboBuild b = build_qubo(inst, opt);
    const std::int64_t p = default_penalty(inst);
    EXPECT_EQ(p, 0 + 7 + 1);
    // With every bit at 0: assign_once and slot_once miss their slack (1 each),
    // no configuration is chosen (1), slot weight balances (0), and the
    // wagon / train registers miss their full capacity (4 and 5 units).
    const std::int64_t mass = p * (1 + 1 + 1 + 0 + 4 * 4 + 5 * 5);
    const std::vector<std::uint8_t> zero(b.model.n, 0);
    EXPECT_EQ(energy_of(b.model, zero), b.model.offset);
    EXPECT_EQ(b.model.offset, mass);
}

TEST(Qubo, NoContainersOnlyConfigAndSlackVariables) {
    InstanceData d;
    d.train_max_weight = 3000;
    d.wagons = {wagon("w", {1}, {{1000}, {2000}}, 2000)};
    const Instance inst(d);
    QuboOptions opt;
    opt.weight_unit = 1000;
    const QuboBuild b = build_qubo(inst, opt);
    for (const auto& role : b.map.entries) EXPECT_NE(role.kind, VariableRole::Kind::Assignment);
    ASSERT_LE(b.model.n, 20u);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t mask = 0; mask < (1u << b.model.n); ++mask) {
        std::vector<std::uint8_t> bits(b.model.n);
        for (std::size_t i = 0; i < b.model.n; ++i) bits[i] = (mask >> i) & 1u;
        best = std::min(best, energy_of(b.model, bits));
    }
    EXPECT_EQ(best, 0);
    for (std::size_t config = 0; config < 2; ++config) {
        EXPECT_EQ(energy_of(b.model, encode_solution(b.map, inst, Solution::unloaded(inst, config))), 0);
    }
}

TEST(Qubo, EnergyMatchesDenseEvaluatorAndFlipDelta) {
    const Instance inst = generate_instance({6, 1, 3, 2, 9, 4});
    const QuboBuild b = build_qubo(inst);
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto bits = random_bits(b.model.n, rng);
        const std::int64_t e = energy_of(b.model, bits);
        EXPECT_EQ(e, dense_energy(b.model, bits));
        const std::size_t i = rng.index(b.model.n);
        const std::int64_t delta = flip_delta(b.model, bits, i);
        bits[i] ^= 1u;
        EXPECT_EQ(energy_of(b.model, bits) - e, delta);
    }
    EXPECT_THROW(energy_of(b.model, std::vector<std::uint8_t>(b.model.n + 1, 0)), QuboError);
}

TEST(Qubo, EncodeOfEmptyPlanSetsOnlyConfigAndResidualSlacks) {
    const Instance inst = generate_instance({6, 1, 3, 2, 9, 4});
    const QuboBuild b = build_qubo(inst);
    const Solution s = Solution::unloaded(inst, 1);
    const auto bits = encode_solution(b.map, inst, s);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const auto& role = b.map.entries[i];
        if (role.kind == VariableRole::Kind::Assignment) EXPECT_EQ(bits[i], 0);
        if (role.kind == VariableRole::Kind::Config) EXPECT_EQ(bits[i], role.config == 1 ? 1 : 0);
    }
    for (const auto& reg : b.map.slacks) {
        std::int64_t value = 0;
        for (std::size_t k = 0; k < reg.width; ++k) value |= std::int64_t{bits[reg.first + k]} << k;
        switch (reg.family) {
            case PenaltyFamily::AssignOnce:
            case PenaltyFamily::SlotOnce: EXPECT_EQ(value, 1); break;
            case PenaltyFamily::SlotWeight:
                EXPECT_EQ(value, inst.wagon(reg.subject).configs[1].per_slot_max[reg.slot] / 100);
                break;
            case PenaltyFamily::WagonWeight: EXPECT_EQ(value, inst.wagon(reg.subject).max_weight / 100); break;
            case PenaltyFamily::TrainWeight: EXPECT_EQ(value, inst.train_max_weight() / 100); break;
            case PenaltyFamily::OneConfig: ADD_FAILURE(); break;
        }
    }
}

TEST(Qubo, ExactOnEveryFeasiblePlanAndDecodeRoundTrips) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Instance inst = generate_instance({6, 1, 3, 2, 9, seed});
        QuboOptions opt;
        opt.weight_unit = 1;
        const QuboBuild b = build_qubo(inst, opt);
        const OracleResult oracle = enumerate_optima(inst);
        std::int64_t best_energy = std::numeric_limits<std::int64_t>::max();
        for_each_feasible(inst, [&](const Solution& s) {
            const auto bits = encode_solution(b.map, inst, s);
            const std::int64_t e = energy_of(b.model, bits);
            ASSERT_EQ(e, objective_shifted(inst, s));
            ASSERT_EQ(decode_solution(b.map, inst, bits), s);
            best_energy = std::min(best_energy, e);
        });
        const auto opt_bits = encode_solution(b.map, inst, oracle.optimal_solutions.front());
        EXPECT_EQ(energy_of(b.model, opt_bits), best_energy);
    }
}

TEST(Qubo, PenaltyDominanceOnReducedInstance) {
    const Instance inst(testing::reduced_qubo_instance());
    QuboOptions opt;
    opt.weight_unit = 1000;
    const QuboBuild b = build_qubo(inst, opt);
    ASSERT_EQ(b.model.n, 20u);
    const OracleResult oracle = enumerate_optima(inst);
    EXPECT_EQ(oracle.optimum, -7);

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::uint32_t> argmin;
    std::vector<std::uint8_t> bits(b.model.n);
    for (std::uint32_t mask = 0; mask < (1u << b.model.n); ++mask) {
        for (std::size_t i = 0; i < b.model.n; ++i) bits[i] = (mask >> i) & 1u;
        const std::int64_t e = energy_of(b.model, bits);
        if (e < best) {
            best = e;
            argmin.clear();
        }
        if (e == best) argmin.push_back(mask);
    }
    EXPECT_EQ(best, oracle.optimum);
    std::vector<Solution> decoded;
    for (std::uint32_t mask : argmin) {
        for (std::size_t i = 0; i < b.model.n; ++i) bits[i] = (mask >> i) & 1u;
        decoded.push_back(decode_solution(b.map, inst, bits));
    }
    std::sort(decoded.begin(), decoded.end(),
              [&](const Solution& x, const Solution& y) { return canonical_less(inst, x, y); });
    EXPECT_EQ(decoded, oracle.optimal_solutions);
}

TEST(Qubo, DiscretizationIsConservative) {
    // 1050 kg rounds up to 11 units against a 1000 kg limit rounded to 10.
    InstanceData d = tiny();
    d.containers[0].weight = 1050;
    d.wagons[0].configs[0].per_slot_max = {1099};
    const Instance inst(d);
    QuboOptions opt;
    opt.weight_unit = 100;
    const QuboBuild b = build_qubo(inst, opt);
    Solution s = Solution::unloaded(inst);
    s.placement[0] = Placement{0, 0};
    ASSERT_TRUE(is_feasible(inst, s));
    EXPECT_THROW(encode_solution(b.map, inst, s), QuboError);
}

TEST(Qubo, BuildErrors) {
    const Instance inst(tiny());
    QuboOptions opt;
    opt.weight_unit = 0;
    EXPECT_THROW(build_qubo(inst, opt), QuboError);
    opt = QuboOptions{};
    opt.weight_unit = 1;
    opt.max_slack_bits = 8;
    try {
        build_qubo(inst, opt);
        FAIL();
    } catch (const QuboError& e) {
        EXPECT_NE(std::string(e.what()).find("weight unit"), std::string::npos);
    }
    opt = QuboOptions{};
    opt.penalty = 0;
    EXPECT_THROW(build_qubo(inst, opt), QuboError);
    InstanceData huge = tiny();
    huge.train_max_weight = std::int64_t{1} << 40;
    opt = QuboOptions{};
    opt.weight_unit = 1;
    opt.max_slack_bits = 64;
    EXPECT_THROW(build_qubo(Instance(huge), opt), QuboError);
}

TEST(QuboExport, CoordinateFileForTwoVariables) {
    QuboModel m;
    m.n = 2;
    m.offset = 3;
    m.coefficients[{0, 0}] = -1;
    m.coefficients[{0, 1}] = 4;
    const Instance inst(tiny());
    const QuboBuild b = build_qubo(inst);
    const std::string text = export_qubo(m, b.map, inst, QuboFormat::CoordinateText);
    EXPECT_EQ(text, "# qubo n=2 offset=3\n0 0 -1\n0 1 4\n");
}

TEST(QuboExport, RoundTripPreservesEnergy) {
    const Instance inst = generate_instance({6, 1, 3, 2, 9, 9});
    const QuboBuild b = build_qubo(inst);
    Rng rng(3);
    for (auto format : {QuboFormat::CoordinateText, QuboFormat::Json}) {
        const QuboModel back = import_qubo(export_qubo(b.model, b.map, inst, format));
        EXPECT_EQ(back.n, b.model.n);
        EXPECT_EQ(back.coefficients, b.model.coefficients);
        for (int i = 0; i < 100; ++i) {
            const auto bits = random_bits(b.model.n, rng);
            ASSERT_EQ(energy_of(back, bits), energy_of(b.model, bits));
        }
    }
}

TEST(QuboExport, JsonSchema) {
    const Instance inst = generate_instance({6, 1, 3, 2, 9, 9});
    const QuboBuild b = build_qubo(inst);
    const auto doc = nlohmann::json::parse(export_qubo(b.model, b.map, inst, QuboFormat::Json));
    EXPECT_EQ(doc["n"], b.model.n);
    EXPECT_EQ(doc["offset"], b.model.offset);
    EXPECT_EQ(doc["weight_unit"], 100);
    ASSERT_EQ(doc["variables"].size(), b.model.n);
    std::set<std::string> roles;
    for (std::size_t i = 0; i < b.model.n; ++i) {
        const auto& v = doc["variables"][i];
        EXPECT_EQ(v["index"], i);
        roles.insert(v["role"].get<std::string>());
        if (v["role"] == "x") {
            EXPECT_TRUE(v.contains("container") && v.contains("wagon") && v.contains("slot"));
        }
    }
    EXPECT_EQ(roles, (std::set<std::string>{"x", "t", "slack"}));
    for (const auto& term : doc["terms"]) {
        ASSERT_EQ(term.size(), 3u);
        EXPECT_LE(term[0].get<std::size_t>(), term[1].get<std::size_t>());
    }
    EXPECT_EQ(doc["penalties"].size(), 6u);
}

TEST(QuboExport, ImportRejectsGarbage) {
    EXPECT_THROW(import_qubo(""), ParseError);
    EXPECT_THROW(import_qubo("# qubo n=2 offset=0\n1 0 3\n"), ParseError);
    EXPECT_THROW(import_qubo("# qubo n=2 offset=0\n0 5 3\n"), ParseError);
    EXPECT_THROW(import_qubo("# nope\n"), ParseError);
}

}  // namespace
}  // namespace tlo
