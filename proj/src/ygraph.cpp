#include "sepcoset/ygraph.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "sepcoset/errors.hpp"

namespace sepcoset {

namespace {

struct YState {
    int D = 0;
    YBallInfo info;
    std::vector<char> member_base;    // per base-cache index
    std::vector<char> member_stable;  // base vs bumped classification agree
    std::vector<Word> gens;           // member words (excl. 1) + H-letter words, shortlex
    std::vector<Word> gens_bumped;    // bumped classification, same generator radius
    std::vector<std::int32_t> ydist1;
    std::vector<std::int32_t> ydist1_bumped;
    std::vector<std::int32_t> scount1;
};

// Y-membership of every vertex of `gc` in one pass: a vertex y fails iff some
// geodesic 1 -> y runs through an H-edge with certified gap > D, which holds
// iff the best "path through an essential edge" has full length d(1,y).
std::vector<char> compute_members(Workspace& ws, const GraphCache& gc, int D) {
    std::vector<std::int32_t> dist1 = gc.bfs(gc.id_one());
    std::vector<std::pair<int, std::int32_t>> seeds;
    const Model& m = ws.model();
    // essentiality of an edge depends only on its letter
    std::unordered_map<std::uint64_t, bool> ess;
    auto letter_essential = [&](const Letter& l) {
        auto [it, fresh] = ess.try_emplace(m.letter_token(l), false);
        if (fresh) it->second = ws.gap_exceeds(l.id, Word{}, m.letter_word(l), D);
        return it->second;
    };
    for (int u = 0; u < gc.size(); ++u) {
        if (dist1[u] < 0) continue;
        for (const GraphCache::Edge& e : gc.edges(u)) {
            if (e.lab.is_x) continue;
            if (letter_essential(e.lab)) seeds.emplace_back(e.to, dist1[u] + 1);
        }
    }
    std::vector<std::int32_t> dist2;
    gc.seeded_bfs_into(seeds, dist2);
    std::vector<char> member(gc.size(), 0);
    for (int v = 0; v < gc.size(); ++v)
        member[v] = (dist1[v] >= 0 && (dist2[v] < 0 || dist2[v] != dist1[v])) ? 1 : 0;
    return member;
}

YState& ystate(Workspace& ws, int D) {
    std::string key = "ygraph:" + std::to_string(D);
    auto it = ws.module_memo.find(key);
    if (it != ws.module_memo.end()) return *std::static_pointer_cast<YState>(it->second);

    auto st = std::make_shared<YState>();
    st->D = D;
    const GraphCache& base = ws.base();
    const GraphCache& bump = ws.bumped();
    const Model& m = ws.model();

    st->member_base = compute_members(ws, base, D);
    std::vector<char> member_bump_full = compute_members(ws, bump, D);
    st->member_stable.assign(base.size(), 0);
    std::vector<char> member_bump(base.size(), 0);
    for (int v = 0; v < base.size(); ++v) {
        int bv = bump.index(base.word(v));
        member_bump[v] = member_bump_full[bv];
        st->member_stable[v] = st->member_base[v] == member_bump[v] ? 1 : 0;
    }

    st->info.D = D;
    st->info.budget = ws.budget();
    for (int v = 0; v < base.size(); ++v) {
        if (st->member_base[v]) st->info.members.push_back(base.word(v));
        if (!st->member_stable[v]) st->info.unstable.push_back(base.word(v));
    }

    auto build_gens = [&](const std::vector<char>& member, int h_budget) {
        std::unordered_set<Word, WordHash> seen;
        std::vector<Word> gens;
        for (int v = 0; v < base.size(); ++v) {
            if (!member[v] || v == base.id_one()) continue;
            if (seen.insert(base.word(v)).second) gens.push_back(base.word(v));
        }
        for (int lam = 0; lam < m.num_families(); ++lam)
            for (SubgroupElement h : m.h_enumerate(lam, h_budget)) {
                Word w = m.subgroup_word(lam, h.code);
                if (seen.insert(w).second) gens.push_back(std::move(w));
            }
        std::sort(gens.begin(), gens.end(), [&](const Word& a, const Word& b) { return m.shortlex_less(a, b); });
        return gens;
    };
    st->gens = build_gens(st->member_base, ws.budget().h_budget);
    st->gens_bumped = build_gens(member_bump, ws.budget().bumped().h_budget);

    ws.module_memo[key] = st;
    return *st;
}

// BFS in the Y u H generator graph over the vertex window `gc`. The
// generator set is dense, so each round picks the cheaper direction: expand
// the frontier forward (|frontier| * |gens|), or probe the unsettled
// vertices' predecessors v * s^-1 with an early break. Stops once
// `stop_vertex` settles.
void ybfs(const Model& m, const GraphCache& gc, const std::vector<Word>& gens, int src,
          std::vector<std::int32_t>& dist, int stop_vertex = -1) {
    dist.assign(gc.size(), -1);
    if (src < 0) return;
    dist[src] = 0;
    if (stop_vertex == src) return;

    Word prod;
    std::vector<Word> inv_gens;  // longest first: deep vertices hit early
    inv_gens.reserve(gens.size());
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) inv_gens.push_back(m.inv(*it));

    std::vector<int> frontier{src};
    std::vector<int> unsettled;
    unsettled.reserve(gc.size() - 1);
    for (int v = 0; v < gc.size(); ++v)
        if (v != src) unsettled.push_back(v);

    std::int32_t round = 0;
    while (!frontier.empty() && !unsettled.empty()) {
        ++round;
        std::vector<int> next;
        if (frontier.size() <= unsettled.size()) {
            for (int u : frontier) {
                const Word& uw = gc.word(u);
                for (const Word& s : gens) {
                    m.mul_into(prod, uw, s);
                    int v = gc.index(prod);
                    if (v >= 0 && dist[v] < 0) {
                        dist[v] = round;
                        next.push_back(v);
                    }
                }
            }
        } else {
            for (int v : unsettled) {
                const Word& vw = gc.word(v);
                for (const Word& si : inv_gens) {
                    m.mul_into(prod, vw, si);
                    int u = gc.index(prod);
                    if (u >= 0 && dist[u] >= 0 && dist[u] < round) {
                        dist[v] = round;
                        next.push_back(v);
                        break;
                    }
                }
            }
        }
        if (stop_vertex >= 0 && dist[stop_vertex] >= 0) return;
        if (next.empty()) break;  // the rest is unreachable in this window
        std::vector<int> still;
        still.reserve(unsettled.size() - next.size());
        for (int v : unsettled)
            if (dist[v] < 0) still.push_back(v);
        unsettled.swap(still);
        frontier.swap(next);
    }
}

} // namespace

const YBallInfo& yball(Workspace& ws, int D) { return ystate(ws, D).info; }

const std::vector<Word>& y_generators(Workspace& ws, int D) { return ystate(ws, D).gens; }

void ybfs_in(Workspace& ws, const GraphCache& gc, const std::vector<Word>& gens, int src,
             std::vector<std::int32_t>& dist, int stop_vertex) {
    ybfs(ws.model(), gc, gens, src, dist, stop_vertex);
}

bool y_member(Workspace& ws, const Word& y, int D) {
    YState& st = ystate(ws, D);
    const GraphCache& base = ws.base();
    int v = base.index(y);
    if (v < 0) throw input_error("y_member: element outside budget ball");
    if (!st.member_stable[v])
        throw partiality_error("y_member: S(1,y;D) emptiness unstable at budget for y = " +
                               ws.model().word_str(y));
    return st.member_base[v] != 0;
}

DistValue y_distance(Workspace& ws, const Word& f, const Word& g, int D) {
    YState& st = ystate(ws, D);
    const GraphCache& base = ws.base();
    const GraphCache& bump = ws.bumped();
    const Model& m = ws.model();
    int fi = base.index(f), gi = base.index(g);
    if (fi < 0 || gi < 0) throw input_error("y_distance: endpoint outside budget ball");

    std::vector<std::int32_t> dist;
    ybfs(m, base, st.gens, fi, dist, gi);
    ExtNat v0 = dist[gi] >= 0 ? ExtNat::of(static_cast<std::uint32_t>(dist[gi])) : ExtNat::inf_at(ws.budget());

    std::vector<std::int32_t> distb;
    ybfs(m, bump, st.gens_bumped, bump.index(f), distb, bump.index(g));
    int bg = bump.index(g);
    ExtNat v1 = distb[bg] >= 0 ? ExtNat::of(static_cast<std::uint32_t>(distb[bg]))
                               : ExtNat::inf_at(ws.budget().bumped());
    return {v0, v0 == v1 && v0.is_finite()};
}

const std::vector<std::int32_t>& ydist_from_one(Workspace& ws, int D) {
    YState& st = ystate(ws, D);
    if (st.ydist1.empty())
        ybfs(ws.model(), ws.base(), st.gens, ws.base().id_one(), st.ydist1);
    return st.ydist1;
}

const std::vector<std::int32_t>& ydist_from_one_bumped(Workspace& ws, int D) {
    YState& st = ystate(ws, D);
    if (st.ydist1_bumped.empty())
        ybfs(ws.model(), ws.bumped(), st.gens_bumped, ws.bumped().id_one(), st.ydist1_bumped);
    return st.ydist1_bumped;
}

const std::vector<std::int32_t>& sep_counts_from_one(Workspace& ws, int D) {
    YState& st = ystate(ws, D);
    if (!st.scount1.empty()) return st.scount1;
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    std::vector<std::int32_t> dist1 = gc.bfs(gc.id_one());

    struct EssEdge {
        int u, v;
        std::int32_t coset;
    };
    std::vector<EssEdge> ess;
    std::unordered_map<std::uint64_t, bool> ess_letter;
    for (int u = 0; u < gc.size(); ++u)
        for (const GraphCache::Edge& e : gc.edges(u)) {
            if (e.lab.is_x) continue;
            auto [it, fresh] = ess_letter.try_emplace(m.letter_token(e.lab), false);
            if (fresh) it->second = ws.gap_exceeds(e.lab.id, Word{}, m.letter_word(e.lab), D);
            if (it->second) ess.push_back(EssEdge{u, e.to, gc.coset_id(u, e.lab.id)});
        }

    st.scount1.assign(gc.size(), 0);
    std::vector<std::int32_t> distg;
    std::vector<std::int32_t> stamp;
    for (int g = 0; g < gc.size(); ++g) {
        gc.bfs_into(g, distg);
        std::int32_t count = 0;
        for (const EssEdge& e : ess) {
            if (dist1[e.u] < 0 || distg[e.v] < 0) continue;
            if (dist1[e.u] + 1 + distg[e.v] != dist1[g]) continue;
            if (static_cast<std::size_t>(e.coset) >= stamp.size()) stamp.resize(e.coset + 1, -1);
            if (stamp[e.coset] != g) {
                stamp[e.coset] = g;
                ++count;
            }
        }
        st.scount1[g] = count;
    }
    return st.scount1;
}

QiGap qi_gap(Workspace& ws, const Word& f, const Word& g, int D) {
    QiGap out;
    out.s_count = static_cast<long long>(sep_cosets(ws, f, g, D).size());
    DistValue dy = y_distance(ws, f, g, D);
    out.dy = dy.d;
    out.stable = dy.stable;
    if (!dy.d.is_finite())
        throw partiality_error("qi_gap: y_distance not finite at budget");
    long long d = dy.d.value;
    out.lower_ok = d - 1 <= 2 * out.s_count;
    out.upper_ok = out.s_count <= 3 * d;
    return out;
}

namespace {

// d_Y(u, v) via the memoized d_Y(1, .) column; nullopt when u^-1 v leaves the
// ball window.
std::optional<std::int32_t> ydist_lookup(Workspace& ws, int D, const Word& u, const Word& v) {
    const GraphCache& gc = ws.base();
    Word rel = ws.model().mul(ws.model().inv(u), v);
    int idx = gc.index(rel);
    if (idx < 0) return std::nullopt;
    std::int32_t d = ydist_from_one(ws, D)[idx];
    if (d < 0) return std::nullopt;
    return d;
}

} // namespace

HausdorffGap hausdorff_gap(Workspace& ws, const Word& f, const Word& g, int D) {
    const Model& m = ws.model();
    HausdorffGap out;

    GeodesicsResult xg = all_geodesics(ws, f, g);
    if (xg.overflow) throw partiality_error("hausdorff_gap: geodesic enumeration overflow");
    std::vector<std::vector<Word>> xsets;
    for (const PathRec& p : xg.paths) xsets.push_back(path_vertices(m, p));

    // enumerate Y u H-geodesics from f to g by translated-distance descent
    auto dyg = [&](const Word& v) { return ydist_lookup(ws, D, v, g); };
    auto d0 = dyg(f);
    if (!d0) throw partiality_error("hausdorff_gap: d_Y(f,g) outside translation window");
    YState& st = ystate(ws, D);
    std::vector<std::vector<Word>> ysets;
    std::vector<std::pair<std::vector<Word>, std::int32_t>> stack{{{f}, *d0}};
    const int cap = std::min(ws.budget().geodesic_cap, 64);  // Hausdorff probe sample
    while (!stack.empty()) {
        auto [path, rem] = std::move(stack.back());
        stack.pop_back();
        if (rem == 0) {
            if (static_cast<int>(ysets.size()) >= cap) {
                out.window_limited = true;
                break;
            }
            ysets.push_back(std::move(path));
            continue;
        }
        if (stack.size() > 200000) {
            out.window_limited = true;
            break;
        }
        for (const Word& s : st.gens) {
            Word v = m.mul(path.back(), s);
            auto dv = dyg(v);
            if (!dv) {
                out.window_limited = true;
                continue;
            }
            if (*dv != rem - 1) continue;
            std::vector<Word> np = path;
            np.push_back(std::move(v));
            stack.emplace_back(std::move(np), rem - 1);
        }
    }

    auto hausdorff = [&](const std::vector<Word>& a, const std::vector<Word>& b) {
        std::int32_t h = 0;
        for (const Word& u : a) {
            std::int32_t best = -1;
            for (const Word& v : b) {
                auto d = ydist_lookup(ws, D, u, v);
                if (!d) {
                    out.window_limited = true;
                    continue;
                }
                if (best < 0 || *d < best) best = *d;
            }
            if (best >= 0) h = std::max(h, best);
        }
        return h;
    };
    for (const auto& a : xsets)
        for (const auto& b : ysets) {
            out.gap = std::max({out.gap, hausdorff(a, b), hausdorff(b, a)});
            ++out.pairs;
        }
    return out;
}

AcylProbe acylindricity_probe(Workspace& ws, int eps, int min_separation, int D, int samples,
                              std::uint64_t seed) {
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    const int R = ws.budget().x_radius;
    AcylProbe out;
    out.eps = eps;
    out.min_separation = min_separation;

    // endpoints from the quarter ball so that all conjugation products stay inside
    std::vector<int> small;
    for (int v = 0; v < gc.size(); ++v)
        if (m.x_length(gc.word(v)) <= R / 4) small.push_back(v);
    std::vector<int> gset;
    for (int v = 0; v < gc.size(); ++v)
        if (m.x_length(gc.word(v)) <= R / 2) gset.push_back(v);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, small.empty() ? 0 : small.size() - 1);
    int tried = 0;
    while (out.pairs_sampled < samples && tried < samples * 50 && !small.empty()) {
        ++tried;
        const Word& x = gc.word(small[pick(rng)]);
        const Word& y = gc.word(small[pick(rng)]);
        auto dxy = ydist_lookup(ws, D, x, y);
        if (!dxy || *dxy < min_separation) continue;
        ++out.pairs_sampled;
        int count = 0;
        for (int gv : gset) {
            const Word& g = gc.word(gv);
            auto a = ydist_lookup(ws, D, x, m.mul(g, x));
            auto b = ydist_lookup(ws, D, y, m.mul(g, y));
            if (a && b && *a <= eps && *b <= eps) ++count;
        }
        out.max_overlap = std::max(out.max_overlap, count);
    }
    return out;
}

} // namespace sepcoset
