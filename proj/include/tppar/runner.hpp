#pragma once

#include <optional>
#include <string>

#include "tppar/errors.hpp"
#include "tppar/problem_spec.hpp"

namespace tppar {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<int> sweep_samples;           // CLI overrides
    std::optional<std::uint64_t> sweep_seed;
    std::vector<std::string> tasks;             // overrides spec.tasks when non-empty
};

/// Executes the task list and writes artifacts into out_dir. Returns the
/// process exit code: 0 pass, 1 schema/usage, 2 structural-condition failure,
/// 3 numerical error.
int run(const ProblemSpec& spec, const RunOptions& options);

/// Exit-code mapping for library errors (schema 1, condition 2, numerical 3).
int exit_code_for(const Error& e);

}  // namespace tppar
