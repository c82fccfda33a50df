#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tlo/evaluation.hpp"
#include "tlo/instance.hpp"
#include "tlo/sa_solver.hpp"

namespace tlo {

enum class EnumerationOrder {
    SlotMajor,       // each slot: empty or one unused compatible container
    ContainerMajor,  // each container: unloaded or one unused compatible slot
};

constexpr double kDefaultOracleBudget = 1e7;

// prod_w |configs_w| * prod_slots (compatible containers + 1).
double estimate_search_space(const Instance& instance);

struct EnumerationStats {
    std::uint64_t feasible = 0;
    std::uint64_t candidates = 0;  // assignment x configuration pairs built
};

// Calls `visit` once for every feasible plan. Throws BudgetExceeded when the
// estimate exceeds `limit`.
EnumerationStats for_each_feasible(const Instance& instance,
                                   const std::function<void(const Solution&)>& visit,
                                   EnumerationOrder order = EnumerationOrder::SlotMajor,
                                   double limit = kDefaultOracleBudget);

struct OracleResult {
    Money optimum = 0;  // shifted objective
    std::vector<Solution> optimal_solutions;  // canonical order
    std::uint64_t enumerated = 0;
    std::uint64_t search_space = 0;
};

OracleResult enumerate_optima(const Instance& instance, double limit = kDefaultOracleBudget,
                              EnumerationOrder order = EnumerationOrder::SlotMajor);

// Canonical plan order: sorted (container id, wagon id, slot) triples
// compared lexicographically, then the configuration vector.
bool canonical_less(const Instance& instance, const Solution& a, const Solution& b);

struct SolverCheck {
    Money optimum = 0;
    Money gap = 0;
    bool is_optimal = false;
};

SolverCheck verify_solver(const Instance& instance, const SaResult& result,
                          double limit = kDefaultOracleBudget);

// {"optimum", "count_feasible", "optima": [plan, ...]}
std::string oracle_report_json(const Instance& instance, const OracleResult& result);

}  // namespace tlo
