#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepcoset/constants.hpp"
#include "sepcoset/relgraph.hpp"
#include "sepcoset/separating.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// A finitely presented geodesic ray: prefix labels followed by a periodic
// label block, from a base vertex. The artifact's proxy for a boundary point.
struct RayScheme {
    Word base;
    std::vector<Letter> prefix;
    std::vector<Letter> period;  // nonempty

    Letter label_at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }
    std::string signature(const Model& m) const;
    static RayScheme parse(const Model& m, const std::string& text);  // base=..;prefix=[..];period=[..]
};

// Exploration window around a ray (or any vertex spine): vertices within
// `width` letters of the spine, cached per (key, spine length). Rays leave
// every ball around 1, so their queries run in these tubes instead.
struct TubePair {
    const GraphCache& base;
    const GraphCache& bumped;
};
TubePair tube_for_spine(Workspace& ws, const std::string& key, const std::vector<Word>& spine, int width);
int default_tube_width(Workspace& ws);

std::vector<Word> ray_vertices(const Model& m, const RayScheme& s, int n);

// First n labels of the scheme as a path; every truncation up to n is
// geodesic-checked against the tube (stable), else the scheme is rejected.
PathRec ray_truncation(Workspace& ws, const RayScheme& s, int n);

// S(x0, x_depth; D) computed in the ray's tube, ordered by distance from x0.
std::vector<SepCosetRecord> ray_sep_cosets(Workspace& ws, const RayScheme& s, int depth, int D);

// sep_cosets over an explicit cache window (shared by rays and windows)
std::vector<SepCosetRecord> sep_cosets_in(Workspace& ws, const GraphCache& gc, const GraphCache& gcb,
                                          const Word& f, const Word& g, int D);

struct ConvergenceRow {
    int depth = 0;
    long long s_count = 0;
    ExtNat dy;
    bool qi_tested = false;  // endpoint within the Y-generator radius
    bool qi_ok = true;
};
struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::string verdict;  // "diverging" | "not diverging via coset count at tested depths" | "inconclusive"
};
ConvergenceReport convergence_check(Workspace& ws, const RayScheme& s, const std::vector<int>& depths, int D);

// Least k with d(x, y_n) = d(x, y_k) + (n - k) over a two-period window, so
// that any geodesic x -> y_k extends the ray geodesically.
int concat_point(Workspace& ws, const Word& x, const RayScheme& s, int depth = -1);

struct PhiPrefix {
    std::vector<Letter> labels;    // lex-min geodesic labels to the target
    int certified_len = 0;         // prefix provably independent of deeper exploration
    std::string target;
};

PhiPrefix phi_prefix(Workspace& ws, const Word& target);
PhiPrefix phi_prefix_ray(Workspace& ws, const RayScheme& s, int depth, int D);

struct AlignedCoset {
    CosetRef coset;
    ExtNat entrance_gap;
    ExtNat exit_gap;
};
// Common separating cosets of two same-limit rays with the relative-metric
// gaps between their entrances/exits; each gap must be <= 4*C-hat.
std::vector<AlignedCoset> align_same_limit(Workspace& ws, const RayScheme& s1, const RayScheme& s2, int D,
                                           int depth, const Ratio& c_hat);

// K = (max over families of |{h in H_lambda : d-hat(1,h) <= t}|)^2, with the
// enumeration window certified complete at this budget.
long long pigeonhole_K(Workspace& ws, int t);

} // namespace sepcoset
