#pragma once

#include <cstdint>

#include "sepcoset/budget.hpp"
#include "sepcoset/extnat.hpp"
#include "sepcoset/model.hpp"

namespace sepcoset {

// Result of a budgeted admissible-path search for d-hat_lam(1, h). When the
// search does not find a path, `certified_lower` records the bound it proved:
// every lam-admissible path from 1 to h using H-letters within h_budget has
// length >= certified_lower.
struct AdmissibleResult {
    ExtNat d;
    int certified_lower = 0;
};

// Bidirectional layered BFS in the (dynamically generated) relative Cayley
// graph, forbidding H_lam-labelled edges whose source lies in H_lam. Stops at
// depth_limit or node_cap; exact values up to depth_limit are returned as
// finite, otherwise inf_at_budget with the proven lower bound.
AdmissibleResult admissible_distance(const Model& m, int lam, const Word& h, int h_budget,
                                     int depth_limit, std::size_t node_cap);

} // namespace sepcoset
