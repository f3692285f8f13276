#pragma once

#include <filesystem>

#include <json.hpp>

#include "rrap/model.hpp"

namespace rrap {

/// JSON layout mirrors RrapProblem. Subsystem "alpha_e5" holds alpha * 10^5 as
/// tabulated; "alpha" (unscaled) is accepted instead.
nlohmann::json problem_to_json(const RrapProblem& p);
RrapProblem problem_from_json(const nlohmann::json& j);
RrapProblem load_problem(const std::filesystem::path& path);

}  // namespace rrap
