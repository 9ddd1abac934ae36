#pragma once

#include <string>
#include <vector>

#include "sepcoset/relgraph.hpp"
#include "sepcoset/separating.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

struct NGonSpec {
    int n_min = 2;
    int n_max = 5;
    int radius = 4;          // polygon vertices drawn from this X-ball
    long long samples = 10000;
    std::uint64_t seed = 0;
    int geodesics_per_side = 4;  // sampled geodesic choices per side
};

// Running max of gap/n over isolated components of sampled geodesic n-gons.
struct CEstimate {
    Ratio c_hat;                 // max over samples of d-hat(a-,a+)/n
    long long polygons = 0;
    long long isolated_components = 0;
    long long isolated_distinct_endpoints = 0;  // free-product certification wants 0
    int worst_gap = 0;
    int worst_n = 1;
    std::string worst_polygon;
    NGonSpec spec;
};

// Samples geodesic n-gons and scans their isolated components. An isolated
// component with distinct endpoints and a proven-infinite gap contradicts the
// linear bound and aborts with diagnostics.
CEstimate estimate_C(Workspace& ws, const NGonSpec& spec);

struct ConstantsReport {
    int D = 0;
    int D_auto = 0;  // 3*ceil(C-hat) + 1
    Ratio c_hat;
    Half delta_x;
    Half delta_y;
    int m_x = 0;
    long long K = 0;
    int K_threshold = 0;
    ExplorationBudget budget;
    std::uint64_t seed = 0;
    CEstimate c_detail;
    bool m_x_window_limited = false;
};

// Assembles every estimated constant at one D. All entries are estimates
// (lower bounds of the true constants) reproducible from the seed.
ConstantsReport estimate_constants(Workspace& ws, int D);

} // namespace sepcoset
