#include "sepcoset/constants.hpp"

#include <random>

#include "sepcoset/errors.hpp"
#include "sepcoset/rays.hpp"
#include "sepcoset/ygraph.hpp"

namespace sepcoset {

CEstimate estimate_C(Workspace& ws, const NGonSpec& spec) {
    if (spec.n_min < 2 || spec.n_max > 6 || spec.n_min > spec.n_max)
        throw input_error("estimate_C: n must lie in [2,6]");
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    CEstimate out;
    out.spec = spec;
    out.c_hat = Ratio{0, 1};

    std::vector<int> pool;
    for (int v = 0; v < gc.size(); ++v)
        if (m.x_length(gc.word(v)) <= spec.radius) pool.push_back(v);
    if (pool.empty()) return out;

    std::mt19937_64 rng(ws.stream_seed(0xC0ull ^ spec.seed));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> pick_n(spec.n_min, spec.n_max);

    // BFS-from-corner arrays are shared across all sampled polygons
    std::unordered_map<int, std::vector<std::int32_t>> dist_memo;
    auto dist_from = [&](int v) -> const std::vector<std::int32_t>& {
        auto [it, fresh] = dist_memo.try_emplace(v);
        if (fresh) gc.bfs_into(v, it->second);
        return it->second;
    };

    for (long long iter = 0; iter < spec.samples; ++iter) {
        const int n = pick_n(rng);
        std::vector<int> corners(n);
        for (int i = 0; i < n; ++i) corners[i] = pool[pick(rng)];

        // assemble a closed path of geodesic sides, choosing one enumerated
        // geodesic per side at random
        PathRec poly;
        poly.base = gc.word(corners[0]);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            int a = corners[i], b = corners[(i + 1) % n];
            GeodesicEnum ge = enumerate_geodesics(gc, a, b, spec.geodesics_per_side, &dist_from(b));
            if (ge.labels.empty()) {
                ok = false;
                break;
            }
            std::uniform_int_distribution<std::size_t> pg(0, ge.labels.size() - 1);
            const auto& labs = ge.labels[pg(rng)];
            poly.labels.insert(poly.labels.end(), labs.begin(), labs.end());
        }
        if (!ok) continue;
        ++out.polygons;

        std::vector<Component> comps = components(m, poly, /*closed=*/true);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            bool isolated = true;
            for (std::size_t j = 0; j < comps.size() && isolated; ++j)
                if (j != i && comps[j].lam == comps[i].lam && comps[j].coset == comps[i].coset)
                    isolated = false;
            if (!isolated) continue;
            ++out.isolated_components;
            const Component& c = comps[i];
            if (c.entry == c.exit) continue;  // degenerate, contributes 0
            ++out.isolated_distinct_endpoints;
            AdmissibleResult gap = ws.dhat(c.lam, c.entry, c.exit, 4 * ws.budget().x_radius);
            if (gap.d.is_proven_inf()) {
                std::string dump = "estimate_C: isolated component with infinite relative metric in a geodesic " +
                                   std::to_string(n) + "-gon; corners:";
                for (int v : corners) dump += " " + m.word_str(gc.word(v));
                dump += "; component coset " + m.word_str(c.coset.rep);
                throw theorem_violation(dump);
            }
            long long g = gap.d.is_finite() ? gap.d.value : gap.certified_lower;
            if (Ratio{out.c_hat.num, out.c_hat.den} < Ratio{g, n}) {
                out.c_hat = Ratio{g, n};
                out.worst_gap = static_cast<int>(g);
                out.worst_n = n;
                std::string desc;
                for (int v : corners) desc += m.word_str(gc.word(v)) + " ";
                out.worst_polygon = desc;
            }
        }
    }
    return out;
}

ConstantsReport estimate_constants(Workspace& ws, int D) {
    ConstantsReport rep;
    rep.D = D;
    rep.budget = ws.budget();
    rep.seed = ws.seed();

    NGonSpec spec;
    spec.seed = ws.seed();
    rep.c_detail = estimate_C(ws, spec);
    rep.c_hat = rep.c_detail.c_hat;
    long long ceil_c = (rep.c_hat.num + rep.c_hat.den - 1) / rep.c_hat.den;
    rep.D_auto = static_cast<int>(3 * ceil_c + 1);

    SampleSpec ds;
    ds.radius = std::min(3, ws.budget().x_radius / 2);
    ds.tuples = 20000;
    ds.seed = ws.stream_seed(0xde17a);
    rep.delta_x = delta_estimate(ws, ds, MetricSel{Metric::rel, 0}).delta;
    rep.delta_y = delta_estimate(ws, ds, MetricSel{Metric::y, D}).delta;

    // Hausdorff gap sample for M-hat_X
    std::mt19937_64 rng(ws.stream_seed(0x4a5));
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    std::vector<int> pool;
    for (int v = 0; v < gc.size(); ++v)
        if (m.x_length(gc.word(v)) <= ws.budget().x_radius / 2) pool.push_back(v);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 30 && !pool.empty(); ++i) {
        const Word& g = gc.word(pool[pick(rng)]);
        try {
            HausdorffGap hg = hausdorff_gap(ws, Word{}, g, D);
            rep.m_x = std::max(rep.m_x, hg.gap);
            rep.m_x_window_limited = rep.m_x_window_limited || hg.window_limited;
        } catch (const partiality_error&) {
            rep.m_x_window_limited = true;
        }
    }

    rep.K_threshold = static_cast<int>(4 * ceil_c);
    rep.K = pigeonhole_K(ws, rep.K_threshold);
    return rep;
}

} // namespace sepcoset
