#pragma once

// JSON value form of a plan, shared by the writers that embed plans.

#include "json_util.hpp"
#include "tlo/evaluation.hpp"
#include "tlo/instance.hpp"

namespace tlo::detail {

ordered_json solution_to_json(const Instance& instance, const Solution& solution);

}  // namespace tlo::detail
