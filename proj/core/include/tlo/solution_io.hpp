#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tlo/evaluation.hpp"
#include "tlo/instance.hpp"

namespace tlo {

// A plan file after resolution against an instance. Problems that the
// in-memory Solution cannot represent (a container listed twice, a wagon
// given zero or several configurations) are returned as violations; for a
// repeated container the first entry wins.
struct ParsedSolution {
    Solution solution;
    std::vector<Violation> violations;
};

// Throws ParseError on malformed JSON / unknown keys and DanglingReference
// when a container, wagon, slot or configuration does not exist.
ParsedSolution parse_solution(const Instance& instance, std::string_view content);

// Assignments in container order, configurations in wagon order, 2-space
// indent, trailing newline.
std::string serialize_solution(const Instance& instance, const Solution& solution);

}  // namespace tlo
