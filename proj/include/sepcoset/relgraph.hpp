#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepcoset/extnat.hpp"
#include "sepcoset/workspace.hpp"

namespace sepcoset {

// A path in a relative Cayley graph: base vertex plus edge labels. Vertices
// are derived, v0 = base, vi = v(i-1) * label(i).
struct PathRec {
    Word base;
    std::vector<Letter> labels;
    bool geodesic = false;

    std::size_t length() const { return labels.size(); }
};

std::vector<Word> path_vertices(const Model& m, const PathRec& p);
PathRec reverse_path(const Model& m, const PathRec& p);
PathRec translate_path(const Model& m, const Word& h, const PathRec& p);

// Maximal H_lambda-subpath of a path, with its coset and endpoints. Edge
// indices refer to the owning path; for closed paths a component may wrap
// around the seam, in which case first_edge > last_edge.
struct Component {
    int lam = 0;
    CosetRef coset;
    Word entry;
    Word exit;
    int first_edge = 0;
    int last_edge = 0;
};

std::vector<Component> components(const Model& m, const PathRec& p, bool closed = false);

// ---------------------------------------------------------------------------

std::vector<std::pair<Letter, Word>> neighbors(Workspace& ws, const Word& g);

DistValue rel_distance(Workspace& ws, const Word& f, const Word& g);

struct GeodesicsResult {
    std::vector<PathRec> paths;
    bool overflow = false;
};
GeodesicsResult all_geodesics(Workspace& ws, const Word& f, const Word& g);

// Exact half-integer (x,y)_o = (d(x,o) + d(y,o) - d(x,y)) / 2.
struct Half {
    std::int32_t twice = 0;
    double value() const { return twice / 2.0; }
    friend auto operator<=>(const Half&, const Half&) = default;
    std::string str() const { return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2"; }
};

struct GromovProduct {
    Half v;
    bool stable = false;
};

// which metric the product is taken in
enum class Metric { rel, y };
struct MetricSel {
    Metric which = Metric::rel;
    int D = 0;  // used when which == Metric::y
};

GromovProduct gromov_product(Workspace& ws, const Word& x, const Word& y, const Word& o, MetricSel sel);

// Max four-point defect max(0, min{(x,y)_w,(y,z)_w} - (x,z)_w) over a sample.
struct SampleSpec {
    int radius = 3;       // points drawn from this X-ball
    int tuples = 2000;    // sampled tuples; 0 = exhaustive over the ball
    std::uint64_t seed = 0;
};
struct DeltaEstimate {
    Half delta;
    SampleSpec spec;
    long long tuples_checked = 0;
};
DeltaEstimate delta_estimate(Workspace& ws, SampleSpec spec, MetricSel sel);

// Chain-infimum visual metric on a finite point set:
//   D(x,y) = min over chains of sum exp(-eps * (z_i, z_{i+1})_o).
// Requires exp(eps * delta_hat) <= sqrt(2); eps_prime = exp(eps*delta_hat)-1.
struct VisualChain {
    std::vector<std::vector<double>> d;       // chain-infimum values
    std::vector<std::vector<double>> direct;  // exp(-eps * gromov product)
    double eps = 0;
    double eps_prime = 0;
    bool lower_bound_ok = true;  // (1 - 2 eps') * direct <= d everywhere
};
VisualChain visual_metric_chain(Workspace& ws, const std::vector<Word>& points, double eps, const Word& o,
                                MetricSel sel, Half delta_hat);

} // namespace sepcoset
