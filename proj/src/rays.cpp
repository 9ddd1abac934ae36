#include "sepcoset/rays.hpp"

#include <algorithm>
#include <unordered_set>

#include "sepcoset/errors.hpp"
#include "sepcoset/ygraph.hpp"

namespace sepcoset {

std::string RayScheme::signature(const Model& m) const {
    std::string s = "b=" + m.word_str(base) + ";p=";
    for (const Letter& l : prefix) s += m.letter_str(l) + ",";
    s += ";q=";
    for (const Letter& l : period) s += m.letter_str(l) + ",";
    return s;
}

RayScheme RayScheme::parse(const Model& m, const std::string& text) {
    RayScheme s;
    auto get_section = [&](const std::string& name) -> std::string {
        auto pos = text.find(name + "=");
        if (pos == std::string::npos) return "";
        pos += name.size() + 1;
        if (pos < text.size() && text[pos] == '[') {
            auto end = text.find(']', pos);
            if (end == std::string::npos) throw input_error("scheme: unbalanced [ in " + text);
            return text.substr(pos + 1, end - pos - 1);
        }
        auto end = text.find_first_of("; ", pos);
        return text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    };
    auto parse_letters = [&](const std::string& body) {
        std::vector<Letter> out;
        std::size_t i = 0;
        while (i < body.size()) {
            auto comma = body.find(',', i);
            std::string item = body.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
            if (!item.empty() && item.find_first_not_of(" \t") != std::string::npos)
                out.push_back(m.parse_letter(item));
            if (comma == std::string::npos) break;
            i = comma + 1;
        }
        return out;
    };
    std::string base = get_section("base");
    s.base = base.empty() ? Word{} : m.parse_word(base);
    s.prefix = parse_letters(get_section("prefix"));
    s.period = parse_letters(get_section("period"));
    if (s.period.empty()) throw input_error("scheme: period must be nonempty: " + text);
    return s;
}

std::vector<Word> ray_vertices(const Model& m, const RayScheme& s, int n) {
    std::vector<Word> vs;
    vs.reserve(n + 1);
    vs.push_back(s.base);
    for (int i = 0; i < n; ++i) vs.push_back(m.apply(vs.back(), s.label_at(i)));
    return vs;
}

int default_tube_width(Workspace& ws) { return std::min(6, ws.budget().x_radius); }

namespace {

struct TubeState {
    int spine_len = 0;
    std::optional<GraphCache> base;
    std::optional<GraphCache> bumped;
};

} // namespace

TubePair tube_for_spine(Workspace& ws, const std::string& key, const std::vector<Word>& spine, int width) {
    std::string full_key = "tube:" + key + ":w" + std::to_string(width);
    auto it = ws.module_memo.find(full_key);
    if (it != ws.module_memo.end()) {
        auto st = std::static_pointer_cast<TubeState>(it->second);
        if (st->spine_len >= static_cast<int>(spine.size())) return {*st->base, *st->bumped};
    }
    auto st = std::make_shared<TubeState>();
    st->spine_len = static_cast<int>(spine.size());
    st->base.emplace(GraphCache::tube(ws.model(), ws.budget(), spine, width));
    st->bumped.emplace(GraphCache::tube(ws.model(), ws.budget().bumped(), spine, width + 2));
    ws.module_memo[full_key] = st;
    return {*st->base, *st->bumped};
}

namespace {

TubePair ray_tube(Workspace& ws, const RayScheme& s, int depth) {
    // build well past the requested depth so per-depth queries share one tube
    const int p = static_cast<int>(s.period.size());
    int build_depth = std::max(depth + 2 * p, 9 * p);
    std::vector<Word> spine = ray_vertices(ws.model(), s, build_depth);
    return tube_for_spine(ws, s.signature(ws.model()), spine, default_tube_width(ws));
}

// distance f -> g inside a window, with the bumped-window stability flag
DistValue window_distance(const GraphCache& gc, const GraphCache& gcb, const Word& f, const Word& g,
                          const ExplorationBudget& b) {
    int fi = gc.index(f), gi = gc.index(g);
    if (fi < 0 || gi < 0) throw input_error("window_distance: endpoint outside window");
    std::vector<std::int32_t> d = gc.bfs(fi);
    ExtNat v0 = d[gi] >= 0 ? ExtNat::of(static_cast<std::uint32_t>(d[gi])) : ExtNat::inf_at(b);
    int fb = gcb.index(f), gb = gcb.index(g);
    ExtNat v1 = ExtNat::inf_at(b.bumped());
    if (fb >= 0 && gb >= 0) {
        std::vector<std::int32_t> db = gcb.bfs(fb);
        if (db[gb] >= 0) v1 = ExtNat::of(static_cast<std::uint32_t>(db[gb]));
    }
    return {v0, v0 == v1 && v0.is_finite()};
}

} // namespace

PathRec ray_truncation(Workspace& ws, const RayScheme& s, int n) {
    if (n < 0) throw input_error("ray_truncation: n must be >= 0");
    const Model& m = ws.model();
    PathRec p;
    p.base = s.base;
    for (int i = 0; i < n; ++i) p.labels.push_back(s.label_at(i));
    if (n == 0) {
        p.geodesic = true;
        return p;
    }
    TubePair tp = ray_tube(ws, s, n);
    std::vector<Word> vs = ray_vertices(m, s, n);
    std::vector<std::int32_t> d = tp.base.bfs(tp.base.index(s.base));
    std::vector<std::int32_t> db = tp.bumped.bfs(tp.bumped.index(s.base));
    for (int i = 1; i <= n; ++i) {
        int vi = tp.base.index(vs[i]);
        int vb = tp.bumped.index(vs[i]);
        if (vi < 0 || d[vi] != i || vb < 0 || db[vb] != i)
            throw input_error("ray scheme rejected: truncation is not stably geodesic at n=" +
                              std::to_string(i) + " (" + s.signature(m) + ")");
    }
    p.geodesic = true;
    return p;
}

std::vector<SepCosetRecord> sep_cosets_in(Workspace& ws, const GraphCache& gc, const GraphCache& gcb,
                                          const Word& f, const Word& g, int D) {
    if (D <= 0) throw input_error("sep_cosets: D must be positive");
    DistValue dv = window_distance(gc, gcb, f, g, ws.budget());
    if (!dv.stable)
        throw partiality_error("sep_cosets: distance not stable in window at budget " + ws.budget().str());
    const Model& m = ws.model();
    int fi = gc.index(f), gi = gc.index(g);
    std::vector<std::int32_t> dist_f = gc.bfs(fi);
    std::vector<std::int32_t> dist_g = gc.bfs(gi);
    const std::int32_t d = dist_f[gi];

    struct Wit {
        std::int32_t coset;
        int dist_f;
        int u;
        std::size_t epos;
        int lam;
        Word entry, exit;
        ExtNat gap;
    };
    std::vector<Wit> wits;
    for (int u = 0; u < gc.size(); ++u) {
        if (dist_f[u] < 0) continue;
        auto es = gc.edges(u);
        for (std::size_t k = 0; k < es.size(); ++k) {
            const GraphCache::Edge& e = es[k];
            if (e.lab.is_x) continue;
            if (dist_g[e.to] < 0 || dist_f[u] + 1 + dist_g[e.to] != d) continue;
            const Word& uw = gc.word(u);
            const Word& vw = gc.word(e.to);
            if (!ws.gap_exceeds(e.lab.id, uw, vw, D)) continue;
            wits.push_back(Wit{gc.coset_id(u, e.lab.id), dist_f[u], u, k, e.lab.id, uw, vw,
                               ws.gap_value(e.lab.id, uw, vw, D)});
        }
    }
    std::sort(wits.begin(), wits.end(), [](const Wit& a, const Wit& b) {
        if (a.coset != b.coset) return a.coset < b.coset;
        if (a.dist_f != b.dist_f) return a.dist_f < b.dist_f;
        if (a.u != b.u) return a.u < b.u;
        return a.epos < b.epos;
    });
    std::vector<SepCosetRecord> out;
    for (std::size_t i = 0; i < wits.size(); ++i) {
        if (i > 0 && wits[i].coset == wits[i - 1].coset) continue;
        out.push_back(SepCosetRecord{gc.coset_of(wits[i].coset), wits[i].entry, wits[i].exit, wits[i].gap, 0,
                                     wits[i].dist_f});
    }
    std::sort(out.begin(), out.end(), [&](const SepCosetRecord& a, const SepCosetRecord& b) {
        if (a.dist_from_f != b.dist_from_f) return a.dist_from_f < b.dist_from_f;
        return m.shortlex_less(a.coset.rep, b.coset.rep);
    });
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].dist_from_f == out[i + 1].dist_from_f)
            throw theorem_violation("sep_cosets (window): two separating cosets at equal distance from f=" +
                                    m.word_str(f));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].position = static_cast<int>(i);
    return out;
}

std::vector<SepCosetRecord> ray_sep_cosets(Workspace& ws, const RayScheme& s, int depth, int D) {
    PathRec trunc = ray_truncation(ws, s, depth);  // rejects non-geodesic schemes
    std::vector<Word> vs = path_vertices(ws.model(), trunc);
    TubePair tp = ray_tube(ws, s, depth);
    return sep_cosets_in(ws, tp.base, tp.bumped, vs.front(), vs.back(), D);
}

ConvergenceReport convergence_check(Workspace& ws, const RayScheme& s, const std::vector<int>& depths, int D) {
    for (std::size_t i = 0; i + 1 < depths.size(); ++i)
        if (depths[i] >= depths[i + 1]) throw input_error("convergence_check: depths must increase");
    ConvergenceReport rep;
    if (depths.empty()) {
        rep.verdict = "inconclusive";
        return rep;
    }
    const Model& m = ws.model();
    TubePair tp = ray_tube(ws, s, depths.back());
    std::vector<Word> vs = ray_vertices(m, s, depths.back());
    // inside the ball the full Y-generator set applies; deeper along the ray
    // the tube BFS uses the generators that fit the tube width (reported as
    // part of the budget semantics)
    const std::vector<Word>& gens_full = y_generators(ws, D);
    std::vector<Word> gens_tube;
    for (const Word& g : gens_full)
        if (m.x_length(g) <= default_tube_width(ws)) gens_tube.push_back(g);

    for (int n : depths) {
        ray_truncation(ws, s, n);
        ConvergenceRow row;
        row.depth = n;
        row.s_count = static_cast<long long>(sep_cosets_in(ws, tp.base, tp.bumped, vs[0], vs[n], D).size());
        int ball_idx = ws.base().index(vs[n]);
        if (ball_idx >= 0 && is_identity(vs[0])) {
            std::int32_t dyv = ydist_from_one(ws, D)[ball_idx];
            row.dy = dyv >= 0 ? ExtNat::of(static_cast<std::uint32_t>(dyv)) : ExtNat::inf_at(ws.budget());
            row.qi_tested = row.dy.is_finite();
        } else {
            std::vector<std::int32_t> dist;
            ybfs_in(ws, tp.base, gens_tube, tp.base.index(vs[0]), dist, tp.base.index(vs[n]));
            int dyv = dist[tp.base.index(vs[n])];
            row.dy = dyv >= 0 ? ExtNat::of(static_cast<std::uint32_t>(dyv)) : ExtNat::inf_at(ws.budget());
            row.qi_tested = false;  // width-limited generators overestimate d_Y
        }
        if (row.qi_tested) {
            long long dy = row.dy.value;
            row.qi_ok = (dy - 1 <= 2 * row.s_count) && (row.s_count <= 3 * dy);
        }
        rep.rows.push_back(row);
    }
    bool s_up = true, dy_up = true, any_flat_s = false;
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        if (rep.rows[i + 1].s_count <= rep.rows[i].s_count) s_up = false;
        if (rep.rows[i + 1].s_count == rep.rows[i].s_count) any_flat_s = true;
        if (!rep.rows[i].dy.is_finite() || !rep.rows[i + 1].dy.is_finite() ||
            rep.rows[i + 1].dy.value <= rep.rows[i].dy.value)
            dy_up = false;
    }
    if (rep.rows.size() >= 2 && s_up && dy_up)
        rep.verdict = "diverging";
    else if (any_flat_s)
        rep.verdict = "not diverging via coset count at tested depths";
    else
        rep.verdict = "inconclusive";
    return rep;
}

int concat_point(Workspace& ws, const Word& x, const RayScheme& s, int depth) {
    const Model& m = ws.model();
    const int p = static_cast<int>(s.period.size());
    if (depth < 0) depth = static_cast<int>(s.prefix.size()) + 6 * p;
    ray_truncation(ws, s, depth);
    std::vector<Word> vs = ray_vertices(m, s, depth);

    // the tube must also cover x; add it as an extra spine point
    std::vector<Word> spine = vs;
    spine.push_back(x);
    TubePair tp = tube_for_spine(ws, s.signature(m) + "+x=" + m.word_str(x), spine, default_tube_width(ws));
    int xi = tp.base.index(x);
    std::vector<std::int32_t> dist = tp.base.bfs(xi);
    std::vector<std::int32_t> distb = tp.bumped.bfs(tp.bumped.index(x));
    auto dx = [&](int n) {
        int vi = tp.base.index(vs[n]);
        int vb = tp.bumped.index(vs[n]);
        if (vi < 0 || dist[vi] < 0 || vb < 0 || distb[vb] != dist[vi])
            throw partiality_error("concat_point: unstable distance to ray vertex " + std::to_string(n));
        return dist[vi];
    };
    for (int k = 0; k <= depth - 2 * p; ++k) {
        bool ok = true;
        for (int n = k; n <= k + 2 * p && ok; ++n)
            if (dx(n) != dx(k) + (n - k)) ok = false;
        if (ok) return k;
    }
    throw widen_window_error("concat_point: no stabilization within depth " + std::to_string(depth) +
                             "; widen the window");
}

PhiPrefix phi_prefix(Workspace& ws, const Word& target) {
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    DistValue dv = rel_distance(ws, Word{}, target);
    if (!dv.stable) throw partiality_error("phi_prefix: distance to target not stable");
    std::vector<std::int32_t> dist = gc.bfs(gc.index(target));
    PhiPrefix out;
    out.target = m.word_str(target);
    int v = gc.id_one();
    while (dist[v] > 0) {
        // adjacency is in alphabet order: the first distance-decreasing edge
        // is the lexicographically least continuation among geodesics
        bool moved = false;
        for (const GraphCache::Edge& e : gc.edges(v)) {
            if (dist[e.to] == dist[v] - 1) {
                out.labels.push_back(e.lab);
                v = e.to;
                moved = true;
                break;
            }
        }
        if (!moved) throw partiality_error("phi_prefix: geodesic descent failed in window");
    }
    out.certified_len = static_cast<int>(out.labels.size());
    return out;
}

PhiPrefix phi_prefix_ray(Workspace& ws, const RayScheme& s, int depth, int D) {
    if (!is_identity(s.base)) throw input_error("phi_prefix_ray: scheme must be based at 1");
    const Model& m = ws.model();
    ray_truncation(ws, s, depth);
    std::vector<Word> vs = ray_vertices(m, s, depth);
    TubePair tp = ray_tube(ws, s, depth);
    std::vector<std::int32_t> dist = tp.base.bfs(tp.base.index(vs[depth]));

    PhiPrefix out;
    out.target = "ray:" + s.signature(m) + "@depth=" + std::to_string(depth);
    int v = tp.base.index(vs[0]);
    while (dist[v] > 0) {
        bool moved = false;
        for (const GraphCache::Edge& e : tp.base.edges(v)) {
            if (dist[e.to] == dist[v] - 1) {
                out.labels.push_back(e.lab);
                v = e.to;
                moved = true;
                break;
            }
        }
        if (!moved) throw partiality_error("phi_prefix_ray: geodesic descent failed in window");
    }
    std::vector<SepCosetRecord> recs = sep_cosets_in(ws, tp.base, tp.bumped, vs[0], vs[depth], D);
    // labels up to the entrance of C_{r-1} are pinned once C_r is known
    out.certified_len = recs.size() >= 2 ? recs[recs.size() - 2].dist_from_f : 0;
    return out;
}

std::vector<AlignedCoset> align_same_limit(Workspace& ws, const RayScheme& s1, const RayScheme& s2, int D,
                                           int depth, const Ratio& c_hat) {
    const Model& m = ws.model();
    // tail check: the vertex sequences must eventually coincide under a shift
    std::vector<Word> v1 = ray_vertices(m, s1, depth);
    std::vector<Word> v2 = ray_vertices(m, s2, depth);
    int shift_window = static_cast<int>(std::max(s1.prefix.size() + 2 * s1.period.size(),
                                                 s2.prefix.size() + 2 * s2.period.size()));
    bool tails_match = false;
    for (int i = 0; i <= shift_window && !tails_match; ++i)
        for (int j = 0; j <= shift_window && !tails_match; ++j) {
            bool ok = true;
            int steps = 0;
            for (int t = 0; i + t < static_cast<int>(v1.size()) && j + t < static_cast<int>(v2.size());
                 ++t, ++steps)
                if (v1[i + t] != v2[j + t]) {
                    ok = false;
                    break;
                }
            if (ok && steps > 2 * static_cast<int>(std::max(s1.period.size(), s2.period.size())))
                tails_match = true;
        }
    if (!tails_match)
        throw partiality_error("align_same_limit: ray tails do not coincide in the tested window");

    std::vector<SepCosetRecord> r1 = ray_sep_cosets(ws, s1, depth, D);
    std::vector<SepCosetRecord> r2 = ray_sep_cosets(ws, s2, depth, D);
    std::vector<AlignedCoset> out;
    for (const SepCosetRecord& a : r1) {
        for (const SepCosetRecord& b : r2) {
            if (!(a.coset == b.coset)) continue;
            AlignedCoset ac;
            ac.coset = a.coset;
            ac.entrance_gap = ws.gap_value(a.coset.lam, a.entry, b.entry, D);
            ac.exit_gap = ws.gap_value(a.coset.lam, a.exit, b.exit, D);
            long long bound = 4 * ((c_hat.num + c_hat.den - 1) / c_hat.den);
            auto violates = [&](const ExtNat& g) {
                return g.is_proven_inf() || (g.is_finite() && static_cast<long long>(g.value) > bound);
            };
            if (violates(ac.entrance_gap) || violates(ac.exit_gap))
                throw theorem_violation("align_same_limit: entrance/exit gap exceeds 4*C-hat at coset " +
                                        m.word_str(a.coset.rep) + " (entrance " + ac.entrance_gap.str() +
                                        ", exit " + ac.exit_gap.str() + ", bound " + std::to_string(bound) +
                                        ")");
            out.push_back(std::move(ac));
            break;
        }
    }
    return out;
}

long long pigeonhole_K(Workspace& ws, int t) {
    if (t < 0) throw input_error("pigeonhole_K: threshold must be >= 0");
    const Model& m = ws.model();
    const int L = std::max(1, ws.budget().h_budget);
    long long max_count = 1;
    for (int lam = 0; lam < m.num_families(); ++lam) {
        long long count = 1;  // h = 1
        if (m.declared_infinite_relative_metric()) {
            max_count = std::max(max_count, count);
            continue;
        }
        if (!m.family_is_cyclic(lam)) {
            for (SubgroupElement h : m.h_enumerate(lam, 1))
                if (!ws.gap_exceeds(lam, Word{}, m.subgroup_word(lam, h.code), t)) ++count;
            max_count = std::max(max_count, count);
            continue;
        }
        // every budgeted step moves x_length by at most max(1, L), so
        // d-hat(1, W^k) >= |W^k|_X / L; beyond the window membership is impossible
        Word w = m.subgroup_word(lam, 1);
        int wlen = m.x_length(w);
        long long window = static_cast<long long>(t) * L / wlen + 1;
        if (window > 100000)
            throw widen_window_error("pigeonhole_K: certification window too large (" +
                                     std::to_string(window) + ")");
        for (long long k = 1; k <= window; ++k) {
            for (int sign : {+1, -1}) {
                Word h = m.subgroup_word(lam, static_cast<std::int32_t>(sign * k));
                if (!ws.gap_exceeds(lam, Word{}, h, t)) ++count;  // d-hat <= t, certified
            }
        }
        max_count = std::max(max_count, count);
    }
    return max_count * max_count;
}

} // namespace sepcoset
