#pragma once

#include <vector>

#include "sepcoset/relgraph.hpp"
#include "sepcoset/separating.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// The Y-set at one D, materialized over the budget ball: Y = {y : S(1,y;D)
// is empty}. Membership is computed for every ball vertex in two passes
// (one BFS from 1 plus one multi-seed BFS over the essential H-edges) and
// re-certified on the bumped ball.
struct YBallInfo {
    int D = 0;
    ExplorationBudget budget;
    std::vector<Word> members;        // Y intersected with the ball, shortlex order, includes 1
    std::vector<Word> unstable;       // vertices whose membership changed at the bumped budget
};

const YBallInfo& yball(Workspace& ws, int D);

// Membership with certification; throws partiality_error when the base and
// bumped budgets disagree.
bool y_member(Workspace& ws, const Word& y, int D);

// BFS distance in the graph generated by (Y ∩ ball) ∪ H-letters. The
// stability recheck bumps the exploration radius and the H-letter budget but
// keeps the Y-generator radius (see README, budget semantics).
DistValue y_distance(Workspace& ws, const Word& f, const Word& g, int D);

// d_Y(1, v) for every ball vertex, memoized per D (base budget).
const std::vector<std::int32_t>& ydist_from_one(Workspace& ws, int D);
const std::vector<std::int32_t>& ydist_from_one_bumped(Workspace& ws, int D);

// The Y u H generator words (shortlex order, identity excluded) at base budget.
const std::vector<Word>& y_generators(Workspace& ws, int D);
// BFS over an arbitrary window in the generator graph; used by ray tubes.
void ybfs_in(Workspace& ws, const GraphCache& gc, const std::vector<Word>& gens, int src,
             std::vector<std::int32_t>& dist, int stop_vertex = -1);

// |S(1,g;D)| for every ball vertex, memoized per D.
const std::vector<std::int32_t>& sep_counts_from_one(Workspace& ws, int D);

struct QiGap {
    bool lower_ok = false;
    bool upper_ok = false;
    long long s_count = 0;
    ExtNat dy;
    bool stable = false;
};
QiGap qi_gap(Workspace& ws, const Word& f, const Word& g, int D);

// Max Hausdorff gap (in d_Y) between X u H-geodesics and Y u H-geodesics
// from f to g. An ESTIMATE: vertex pairs outside the translation window are
// reported, not silently dropped.
struct HausdorffGap {
    int gap = 0;
    long long pairs = 0;
    bool window_limited = false;
};
HausdorffGap hausdorff_gap(Workspace& ws, const Word& f, const Word& g, int D);

// Max over sampled far pairs (x,y) of |{g : d_Y(x,gx) <= eps, d_Y(y,gy) <= eps}|.
// A finite report, not a proof of acylindricity.
struct AcylProbe {
    int max_overlap = 0;
    long long pairs_sampled = 0;
    int eps = 0;
    int min_separation = 0;
};
AcylProbe acylindricity_probe(Workspace& ws, int eps, int min_separation, int D, int samples,
                              std::uint64_t seed);

} // namespace sepcoset
