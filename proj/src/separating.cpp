#include "sepcoset/separating.hpp"

#include <algorithm>
#include <unordered_set>

#include "sepcoset/errors.hpp"

namespace sepcoset {

namespace {

struct Witness {
    std::int32_t coset;
    int dist_f;
    int u;             // vertex index, for deterministic tie-breaks
    std::size_t epos;  // adjacency position of the edge at u
    int lam;
    Word entry;
    Word exit;
    ExtNat gap;
};

} // namespace

std::vector<SepCosetRecord> sep_cosets(Workspace& ws, const Word& f, const Word& g, int D) {
    if (D <= 0) throw input_error("sep_cosets: D must be positive");
    DistValue dv = rel_distance(ws, f, g);
    if (!dv.stable)
        throw partiality_error("sep_cosets: rel_distance(f,g) not stable at budget " + ws.budget().str());
    const GraphCache& gc = ws.base();
    const Model& m = ws.model();
    int fi = gc.index(f), gi = gc.index(g);
    auto dist_f_p = gc.dist_from(fi);
    auto dist_g_p = gc.dist_from(gi);
    const std::vector<std::int32_t>& dist_f = *dist_f_p;
    const std::vector<std::int32_t>& dist_g = *dist_g_p;
    const std::int32_t d = dist_f[gi];

    std::vector<Witness> wits;
    for (int u = 0; u < gc.size(); ++u) {
        if (dist_f[u] < 0) continue;
        auto es = gc.edges(u);
        for (std::size_t k = 0; k < es.size(); ++k) {
            const GraphCache::Edge& e = es[k];
            if (e.lab.is_x) continue;
            if (dist_f[u] + 1 + dist_g[e.to] != d) continue;  // not on any geodesic f->g
            const Word& uw = gc.word(u);
            const Word& vw = gc.word(e.to);
            if (!ws.gap_exceeds(e.lab.id, uw, vw, D)) continue;
            wits.push_back(Witness{gc.coset_id(u, e.lab.id), dist_f[u], u, k, e.lab.id, uw, vw,
                                   ws.gap_value(e.lab.id, uw, vw, D)});
        }
    }
    std::sort(wits.begin(), wits.end(), [](const Witness& a, const Witness& b) {
        if (a.coset != b.coset) return a.coset < b.coset;
        if (a.dist_f != b.dist_f) return a.dist_f < b.dist_f;
        if (a.u != b.u) return a.u < b.u;
        return a.epos < b.epos;
    });

    std::vector<SepCosetRecord> out;
    for (std::size_t i = 0; i < wits.size(); ++i) {
        if (i > 0 && wits[i].coset == wits[i - 1].coset) continue;
        const Witness& w = wits[i];
        out.push_back(SepCosetRecord{gc.coset_of(w.coset), w.entry, w.exit, w.gap, 0, w.dist_f});
    }
    std::sort(out.begin(), out.end(), [&](const SepCosetRecord& a, const SepCosetRecord& b) {
        if (a.dist_from_f != b.dist_from_f) return a.dist_from_f < b.dist_from_f;
        return m.shortlex_less(a.coset.rep, b.coset.rep);
    });
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].dist_from_f == out[i + 1].dist_from_f)
            throw theorem_violation("sep_cosets: two separating cosets at equal distance from f: " +
                                    m.word_str(out[i].coset.rep) + " and " + m.word_str(out[i + 1].coset.rep) +
                                    " for pair (" + m.word_str(f) + ", " + m.word_str(g) + "), D=" +
                                    std::to_string(D));
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].position = static_cast<int>(i);
    return out;
}

std::vector<SepCosetRecord> essential_penetrations(Workspace& ws, const PathRec& p, int D) {
    if (!p.geodesic) throw input_error("essential_penetrations: path is not geodesic-flagged");
    const Model& m = ws.model();
    std::vector<SepCosetRecord> out;
    int pos = 0;
    for (const Component& c : components(m, p, /*closed=*/false)) {
        if (c.first_edge != c.last_edge)
            throw input_error("essential_penetrations: multi-edge component on a geodesic path");
        if (!ws.gap_exceeds(c.lam, c.entry, c.exit, D)) continue;
        out.push_back(SepCosetRecord{c.coset, c.entry, c.exit, ws.gap_value(c.lam, c.entry, c.exit, D),
                                     pos++, c.first_edge});
    }
    return out;
}

TripleSplit triple_split(Workspace& ws, const Word& f, const Word& g, const Word& z, int D,
                         const Ratio& c_hat) {
    if (static_cast<long long>(D) * c_hat.den < 11 * c_hat.num)
        throw input_error("triple_split: requires D >= 11*C-hat (D=" + std::to_string(D) +
                          ", C-hat=" + std::to_string(c_hat.value()) + ")");
    std::vector<SepCosetRecord> s = sep_cosets(ws, f, g, D);
    std::vector<SepCosetRecord> sfz = sep_cosets(ws, f, z, D);
    std::vector<SepCosetRecord> szg = sep_cosets(ws, z, g, D);

    std::unordered_set<CosetRef, CosetRefHash> in_fz, in_zg;
    for (const auto& r : sfz) in_fz.insert(r.coset);
    for (const auto& r : szg) in_zg.insert(r.coset);

    const int n = static_cast<int>(s.size());
    int a = 0;
    while (a < n && in_fz.count(s[a].coset)) ++a;
    int b = n;
    while (b > a && in_zg.count(s[b - 1].coset)) --b;

    TripleSplit out;
    out.s_fz.assign(s.begin(), s.begin() + a);
    out.s_zg.assign(s.begin() + b, s.end());
    out.window.assign(s.begin() + a, s.begin() + b);
    if (static_cast<int>(out.window.size()) > 4) {
        const Model& m = ws.model();
        std::string dump = "triple_split: |F| = " + std::to_string(out.window.size()) + " > 4 for f=" +
                           m.word_str(f) + " g=" + m.word_str(g) + " z=" + m.word_str(z) +
                           " D=" + std::to_string(D) + "; F = {";
        for (const auto& r : out.window) dump += m.word_str(r.coset.rep) + " ";
        dump += "}";
        throw theorem_violation(dump);
    }
    return out;
}

} // namespace sepcoset
