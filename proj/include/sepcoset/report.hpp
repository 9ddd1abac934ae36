#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sepcoset/budget.hpp"
#include "sepcoset/model.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

struct RunConfig {
    std::string model_name = "free_cyclic";  // builtin name or file path
    GroupModelSpec spec;
    int D = 5;
    ExplorationBudget budget;
    std::uint64_t seed = 7;
    std::string format = "json";  // json | csv | text
    std::string cache_dir;
    int verify_radius = 6;  // exhaustive sweeps run inside this sub-ball
};

struct PropertyResult {
    std::string name;     // short id, e.g. "entrance-gap-3c"
    std::string anchor;   // what the property states, one line
    long long instances = 0;
    long long failures = 0;
    bool inconclusive = false;
    std::string worst_witness;  // replayable description of the worst instance
};

struct VerifyReport {
    std::string schema = "sepcoset-lab/1";
    std::string model;
    int D = 0;
    ExplorationBudget budget;
    std::uint64_t seed = 0;
    int verify_radius = 0;
    std::vector<PropertyResult> properties;

    bool all_pass() const;
    bool any_inconclusive() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

// Runs one suite ("group_model", "relative_graph", "separating", "y_graph",
// "rays", "boundary", "cber") or "all".
VerifyReport run_verify(Workspace& ws, const RunConfig& cfg, const std::string& suite);

std::vector<std::string> verify_suite_names();

} // namespace sepcoset
