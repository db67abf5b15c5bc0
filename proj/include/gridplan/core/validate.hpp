#pragma once

#include <string>
#include <vector>

#include "gridplan/core/system.hpp"

namespace gridplan::core {

struct Violation {
    std::string code;     // e.g. "line.incidence", "time_grid.weight_normalization"
    std::string message;
};

/// Checks every type invariant of the planning world. Pure; an empty result
/// means the system is well-formed.
[[nodiscard]] std::vector<Violation> validate_system(const SystemData& system);

[[nodiscard]] bool has_violation(const std::vector<Violation>& report, const std::string& code);

}  // namespace gridplan::core
