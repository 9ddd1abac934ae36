#include "sepcoset/relgraph.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sepcoset/errors.hpp"
#include "sepcoset/ygraph.hpp"

namespace sepcoset {

std::vector<Word> path_vertices(const Model& m, const PathRec& p) {
    std::vector<Word> vs;
    vs.reserve(p.labels.size() + 1);
    vs.push_back(p.base);
    for (const Letter& l : p.labels) vs.push_back(m.apply(vs.back(), l));
    return vs;
}

PathRec reverse_path(const Model& m, const PathRec& p) {
    std::vector<Word> vs = path_vertices(m, p);
    PathRec r;
    r.base = vs.back();
    r.geodesic = p.geodesic;
    for (auto it = p.labels.rbegin(); it != p.labels.rend(); ++it) r.labels.push_back(m.inv_letter(*it));
    return r;
}

PathRec translate_path(const Model& m, const Word& h, const PathRec& p) {
    PathRec t = p;
    t.base = m.mul(h, p.base);
    return t;
}

std::vector<Component> components(const Model& m, const PathRec& p, bool closed) {
    const int n = static_cast<int>(p.labels.size());
    std::vector<Component> out;
    if (n == 0) return out;
    std::vector<Word> vs = path_vertices(m, p);

    auto fam = [&](int i) { return p.labels[i].is_x ? -1 : p.labels[i].id; };

    int start = 0;
    if (closed) {
        // rotate to a run boundary so maximality holds across the seam
        start = -1;
        for (int i = 0; i < n; ++i) {
            int prev = (i + n - 1) % n;
            if (fam(i) == -1 || fam(i) != fam(prev)) {
                start = i;
                break;
            }
        }
        if (start == -1) {
            // every edge lies in one H_lambda-coset: the closed path is a single component
            Component c;
            c.lam = fam(0);
            c.coset = m.coset_canonical(vs[0], c.lam);
            c.entry = vs[0];
            c.exit = vs[0];
            c.first_edge = 0;
            c.last_edge = n - 1;
            return {c};
        }
    }

    int i = 0;
    while (i < n) {
        int e = closed ? (start + i) % n : i;
        if (fam(e) == -1) {
            ++i;
            continue;
        }
        int lam = fam(e);
        int j = i;
        while (j + 1 < n) {
            int e2 = closed ? (start + j + 1) % n : j + 1;
            if (fam(e2) != lam) break;
            ++j;
        }
        Component c;
        c.lam = lam;
        int first = closed ? (start + i) % n : i;
        int last = closed ? (start + j) % n : j;
        c.first_edge = first;
        c.last_edge = last;
        c.entry = vs[first];
        c.exit = vs[last + 1];  // vs has n+1 entries; for closed paths vs[n] == vs[0]
        c.coset = m.coset_canonical(c.entry, lam);
        out.push_back(std::move(c));
        i = j + 1;
    }
    return out;
}

std::vector<std::pair<Letter, Word>> neighbors(Workspace& ws, const Word& g) {
    const Model& m = ws.model();
    if (m.x_length(g) > ws.budget().x_radius)
        throw input_error("neighbors: vertex outside x_radius " + std::to_string(ws.budget().x_radius));
    const GraphCache& gc = ws.base();
    int v = gc.index(g);
    std::vector<std::pair<Letter, Word>> out;
    for (const GraphCache::Edge& e : gc.edges(v)) out.emplace_back(e.lab, gc.word(e.to));
    return out;
}

DistValue rel_distance(Workspace& ws, const Word& f, const Word& g) {
    const GraphCache& gc = ws.base();
    int fi = gc.index(f), gi = gc.index(g);
    if (fi < 0 || gi < 0) throw input_error("rel_distance: endpoint outside budget ball");
    auto d = gc.dist_from(fi);
    ExtNat v0 = (*d)[gi] >= 0 ? ExtNat::of(static_cast<std::uint32_t>((*d)[gi])) : ExtNat::inf_at(ws.budget());

    const GraphCache& gb = ws.bumped();
    int fb = gb.index(f), gbi = gb.index(g);
    ExtNat v1 = ExtNat::inf_at(gb.budget());
    if (fb >= 0 && gbi >= 0) {
        auto db = gb.dist_from(fb);
        if ((*db)[gbi] >= 0) v1 = ExtNat::of(static_cast<std::uint32_t>((*db)[gbi]));
    }
    return {v0, v0 == v1 && v0.is_finite()};
}

GeodesicsResult all_geodesics(Workspace& ws, const Word& f, const Word& g) {
    DistValue d = rel_distance(ws, f, g);
    if (!d.stable)
        throw partiality_error("all_geodesics: rel_distance not stable at budget " + ws.budget().str());
    const GraphCache& gc = ws.base();
    GeodesicEnum ge = enumerate_geodesics(gc, gc.index(f), gc.index(g), ws.budget().geodesic_cap);
    GeodesicsResult out;
    out.overflow = ge.overflow;
    out.paths.reserve(ge.labels.size());
    for (auto& labs : ge.labels) out.paths.push_back(PathRec{f, std::move(labs), true});
    return out;
}

DistValue metric_distance(Workspace& ws, MetricSel sel, const Word& f, const Word& g) {
    if (sel.which == Metric::rel) return rel_distance(ws, f, g);
    return y_distance(ws, f, g, sel.D);
}

GromovProduct gromov_product(Workspace& ws, const Word& x, const Word& y, const Word& o, MetricSel sel) {
    DistValue dxo = metric_distance(ws, sel, x, o);
    DistValue dyo = metric_distance(ws, sel, y, o);
    DistValue dxy = metric_distance(ws, sel, x, y);
    if (!dxo.d.is_finite() || !dyo.d.is_finite() || !dxy.d.is_finite())
        throw partiality_error("gromov_product: infinite distance at budget");
    Half h{static_cast<std::int32_t>(dxo.d.value + dyo.d.value) - static_cast<std::int32_t>(dxy.d.value)};
    return {h, dxo.stable && dyo.stable && dxy.stable};
}

namespace {

// sample points and the full pairwise distance matrix among them
struct PointMatrix {
    std::vector<int> pts;                       // cache indices
    std::vector<std::vector<std::int32_t>> d;   // pairwise
};

PointMatrix point_matrix(Workspace& ws, int radius, MetricSel sel) {
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    PointMatrix pm;
    for (int v = 0; v < gc.size(); ++v)
        if (m.x_length(gc.word(v)) <= radius) pm.pts.push_back(v);
    const int k = static_cast<int>(pm.pts.size());
    pm.d.assign(k, std::vector<std::int32_t>(k, -1));
    if (sel.which == Metric::rel) {
        std::vector<std::int32_t> dist;
        for (int a = 0; a < k; ++a) {
            gc.bfs_into(pm.pts[a], dist);
            for (int b = 0; b < k; ++b) pm.d[a][b] = dist[pm.pts[b]];
        }
    } else {
        // d_Y via the memoized column from 1 and left translation; sample
        // points live in the half ball, so the products stay inside
        const auto& dy1 = ydist_from_one(ws, sel.D);
        for (int a = 0; a < k; ++a) {
            Word ia = m.inv(gc.word(pm.pts[a]));
            for (int b = 0; b < k; ++b) {
                int idx = gc.index(m.mul(ia, gc.word(pm.pts[b])));
                pm.d[a][b] = idx >= 0 ? dy1[idx] : -1;
            }
        }
    }
    return pm;
}

} // namespace

DeltaEstimate delta_estimate(Workspace& ws, SampleSpec spec, MetricSel sel) {
    PointMatrix pm = point_matrix(ws, spec.radius, sel);
    const int k = static_cast<int>(pm.pts.size());
    DeltaEstimate out;
    out.spec = spec;
    if (k == 0) return out;

    auto defect = [&](int w, int x, int y, int z) -> std::int32_t {
        // 2*(x,y)_w etc; -1 distances mean unreachable at budget, skipped
        if (pm.d[w][x] < 0 || pm.d[w][y] < 0 || pm.d[w][z] < 0 || pm.d[x][y] < 0 || pm.d[y][z] < 0 ||
            pm.d[x][z] < 0)
            return -1;
        std::int32_t xy = pm.d[x][w] + pm.d[y][w] - pm.d[x][y];
        std::int32_t yz = pm.d[y][w] + pm.d[z][w] - pm.d[y][z];
        std::int32_t xz = pm.d[x][w] + pm.d[z][w] - pm.d[x][z];
        return std::max<std::int32_t>(0, std::min(xy, yz) - xz);
    };

    std::int32_t worst = 0;
    if (spec.tuples == 0) {
        for (int w = 0; w < k; ++w)
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y)
                    for (int z = 0; z < k; ++z) {
                        worst = std::max(worst, defect(w, x, y, z));
                        ++out.tuples_checked;
                    }
    } else {
        std::mt19937_64 rng(spec.seed);
        std::uniform_int_distribution<int> pick(0, k - 1);
        for (int t = 0; t < spec.tuples; ++t) {
            worst = std::max(worst, defect(pick(rng), pick(rng), pick(rng), pick(rng)));
            ++out.tuples_checked;
        }
    }
    out.delta = Half{worst};
    return out;
}

VisualChain visual_metric_chain(Workspace& ws, const std::vector<Word>& points, double eps, const Word& o,
                                MetricSel sel, Half delta_hat) {
    if (std::exp(eps * delta_hat.value()) > std::sqrt(2.0) + 1e-12)
        throw input_error("visual_metric_chain: need exp(eps*delta) <= sqrt(2); eps <= " +
                          std::to_string(std::log(std::sqrt(2.0)) / std::max(delta_hat.value(), 1e-9)));
    VisualChain vc;
    vc.eps = eps;
    vc.eps_prime = std::exp(eps * delta_hat.value()) - 1.0;
    const int k = static_cast<int>(points.size());
    vc.direct.assign(k, std::vector<double>(k, 0.0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            GromovProduct gp = gromov_product(ws, points[a], points[b], o, sel);
            vc.direct[a][b] = std::exp(-eps * gp.v.value());
        }
    vc.d = vc.direct;
    for (int a = 0; a < k; ++a) vc.d[a][a] = 0.0;  // the trivial chain
    for (int mid = 0; mid < k; ++mid)
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                vc.d[a][b] = std::min(vc.d[a][b], vc.d[a][mid] + vc.d[mid][b]);
    for (int a = 0; a < k && vc.lower_bound_ok; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && vc.d[a][b] + 1e-12 < (1.0 - 2.0 * vc.eps_prime) * vc.direct[a][b]) {
                vc.lower_bound_ok = false;
                break;
            }
    return vc;
}

} // namespace sepcoset
