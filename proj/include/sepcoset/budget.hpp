#pragma once

#include <cstdint>
#include <string>

namespace sepcoset {

// The relative Cayley graph is locally infinite, so every exploration is
// budgeted: vertices up to X-length x_radius, H-edges whose label expands to
// at most h_budget X-letters, and at most geodesic_cap enumerated geodesics.
// Every reported value carries the budget that produced it.
struct ExplorationBudget {
    int x_radius = 8;
    int h_budget = 8;
    int geodesic_cap = 20000;

    ExplorationBudget bumped(int step = 2) const {
        return ExplorationBudget{x_radius + step, h_budget + step, geodesic_cap};
    }

    std::string str() const {
        return "R=" + std::to_string(x_radius) + ",L=" + std::to_string(h_budget) +
               ",cap=" + std::to_string(geodesic_cap);
    }

    friend bool operator==(const ExplorationBudget&, const ExplorationBudget&) = default;
};

} // namespace sepcoset
