#include "sepcoset/boundary.hpp"

#include <algorithm>
#include <unordered_set>

#include "sepcoset/errors.hpp"

namespace sepcoset {

namespace {

// spine of the central window: minus-ray reversed, then plus-ray
std::vector<Word> window_spine(const Model& m, const RayScheme& minus, const RayScheme& plus, int n) {
    std::vector<Word> a = ray_vertices(m, minus, n);
    std::vector<Word> b = ray_vertices(m, plus, n);
    std::vector<Word> spine(a.rbegin(), a.rend());
    spine.insert(spine.end(), b.begin() + 1, b.end());
    return spine;
}

std::string window_key(const Model& m, const RayScheme& minus, const RayScheme& plus) {
    return "win:" + minus.signature(m) + "|" + plus.signature(m);
}

} // namespace

BiInfiniteWindow central_window(Workspace& ws, const RayScheme& minus, const RayScheme& plus, int n, int D) {
    const Model& m = ws.model();
    if (!(minus.base == plus.base))
        throw input_error("central_window: the two schemes must share a base vertex");
    BiInfiniteWindow w;
    w.minus = minus;
    w.plus = plus;
    w.n = n;
    w.D = D;
    if (n == 0) {
        w.central.base = minus.base;
        w.central.geodesic = true;
        return w;
    }
    // both halves must be geodesic rays on their own
    PathRec pm = ray_truncation(ws, minus, n);
    PathRec pp = ray_truncation(ws, plus, n);

    std::vector<Word> spine = window_spine(m, minus, plus, n);
    int build_n = n + 2 * static_cast<int>(std::max(minus.period.size(), plus.period.size()));
    std::vector<Word> build_spine = window_spine(m, minus, plus, build_n);
    TubePair tp = tube_for_spine(ws, window_key(m, minus, plus), build_spine, default_tube_width(ws));

    // join check: the concatenation through the base must be geodesic, i.e.
    // d(x_-n, x_n) = 2n, certified on base and bumped windows
    DistValue dv = [&] {
        int fi = tp.base.index(spine.front()), gi = tp.base.index(spine.back());
        if (fi < 0 || gi < 0) throw input_error("central_window: endpoints outside window");
        std::vector<std::int32_t> d = tp.base.bfs(fi);
        std::vector<std::int32_t> db = tp.bumped.bfs(tp.bumped.index(spine.front()));
        int bg = tp.bumped.index(spine.back());
        ExtNat v0 = d[gi] >= 0 ? ExtNat::of(d[gi]) : ExtNat::inf_at(ws.budget());
        ExtNat v1 = db[bg] >= 0 ? ExtNat::of(db[bg]) : ExtNat::inf_at(ws.budget().bumped());
        return DistValue{v0, v0 == v1 && v0.is_finite()};
    }();
    if (!dv.stable) throw partiality_error("central_window: central distance not stable; widen the window");
    if (!dv.d.is_finite() || dv.d.value != static_cast<std::uint32_t>(2 * n))
        throw input_error("central_window: join through the base is not geodesic (d = " + dv.d.str() +
                          ", expected " + std::to_string(2 * n) + "); reposition the schemes");

    PathRec central;
    central.base = spine.front();
    PathRec rm = reverse_path(m, pm);
    central.labels = rm.labels;
    central.labels.insert(central.labels.end(), pp.labels.begin(), pp.labels.end());
    central.geodesic = true;
    w.central = central;
    w.records = sep_cosets_in(ws, tp.base, tp.bumped, spine.front(), spine.back(), D);
    return w;
}

DichotomySide dichotomy_check(Workspace& ws, const RayScheme& xi, const RayScheme& eta, const RayScheme& zeta,
                              const SepCosetRecord& B, int n, int D, const Ratio& c_hat) {
    if (static_cast<long long>(D) * c_hat.den < 6 * c_hat.num)
        throw input_error("dichotomy_check: requires D >= 6*C-hat");
    const Model& m = ws.model();

    auto side_uniform = [&](const RayScheme& a, const RayScheme& b) {
        std::vector<Word> spine = window_spine(m, a, b, n);
        TubePair tp = tube_for_spine(ws, window_key(m, a, b), spine, default_tube_width(ws));
        int fi = tp.base.index(spine.front()), gi = tp.base.index(spine.back());
        if (fi < 0 || gi < 0) throw partiality_error("dichotomy_check: window endpoints missing");
        std::int32_t cid = tp.base.coset_id_word(B.coset.rep, B.coset.lam);
        return !exists_geodesic_avoiding(tp.base, fi, gi, B.coset.lam, cid);
    };
    if (side_uniform(xi, zeta)) return DichotomySide::toward_minus;
    if (side_uniform(zeta, eta)) return DichotomySide::toward_plus;
    throw theorem_violation("dichotomy_check: coset " + m.word_str(B.coset.rep) +
                            " avoided by central geodesics on both sides at window n=" + std::to_string(n) +
                            ", D=" + std::to_string(D));
}

PathRec splice(Workspace& ws, const PathRec& beta, const PathRec& alpha, const CosetRef& B, int D,
               const Ratio& c_hat) {
    const Model& m = ws.model();
    auto find_component = [&](const PathRec& p) -> Component {
        for (const Component& c : components(m, p, false))
            if (c.lam == B.lam && c.coset == B) return c;
        throw input_error("splice: path does not penetrate the given coset");
    };
    Component cb = find_component(beta);
    Component ca = find_component(alpha);

    long long bound3 = 3 * ((c_hat.num + c_hat.den - 1) / c_hat.den);
    ExtNat gap = ws.gap_value(B.lam, cb.entry, cb.exit, D);
    bool big = gap.is_proven_inf() || (gap.is_finite() && static_cast<long long>(gap.value) > bound3);
    if (!big)
        throw input_error("splice: gap " + gap.str() + " of the shared coset does not exceed 3*C-hat = " +
                          std::to_string(bound3));

    std::vector<Word> bv = path_vertices(m, beta);
    std::vector<Word> av = path_vertices(m, alpha);
    PathRec out;
    out.base = beta.base;
    out.labels.assign(beta.labels.begin(), beta.labels.begin() + cb.first_edge);
    if (!(cb.entry == ca.exit)) {
        Word conn = m.mul(m.inv(cb.entry), ca.exit);
        auto mem = m.subgroup_membership(conn, B.lam);
        if (!mem || mem->is_identity())
            throw input_error("splice: entrance and exit are not joined by an H-edge");
        out.labels.push_back(Letter::h(B.lam, mem->code));
    }
    out.labels.insert(out.labels.end(), alpha.labels.begin() + ca.last_edge + 1, alpha.labels.end());

    // geodesic check across the window
    std::vector<Word> spine = path_vertices(m, out);
    TubePair tp = tube_for_spine(ws, "splice:" + m.word_str(spine.front()) + ">" + m.word_str(spine.back()),
                                 spine, default_tube_width(ws));
    std::vector<std::int32_t> d = tp.base.bfs(tp.base.index(spine.front()));
    int gi = tp.base.index(spine.back());
    if (d[gi] != static_cast<std::int32_t>(out.labels.size()))
        throw theorem_violation("splice: spliced path is not geodesic across the window (length " +
                                std::to_string(out.labels.size()) + ", distance " + std::to_string(d[gi]) +
                                ")");
    out.geodesic = true;
    return out;
}

TripleSplit f4_split(Workspace& ws, const RayScheme& xi, const RayScheme& eta, const RayScheme& zeta, int n,
                     int D, const Ratio& c_hat) {
    if (static_cast<long long>(D) * c_hat.den < 11 * c_hat.num)
        throw input_error("f4_split: requires D >= 11*C-hat");
    const Model& mm = ws.model();
    auto same = [&](const RayScheme& a, const RayScheme& b) { return a.signature(mm) == b.signature(mm); };
    BiInfiniteWindow w_xe = central_window(ws, xi, eta, n, D);

    // S(zeta,zeta;D) is empty by definition, so a degenerate side is skipped
    std::unordered_set<CosetRef, CosetRefHash> in_xz, in_ze;
    if (!same(zeta, xi)) {
        BiInfiniteWindow w_xz = central_window(ws, xi, zeta, n, D);
        for (const auto& r : w_xz.records) in_xz.insert(r.coset);
    }
    if (!same(zeta, eta)) {
        BiInfiniteWindow w_ze = central_window(ws, zeta, eta, n, D);
        for (const auto& r : w_ze.records) in_ze.insert(r.coset);
    }

    const auto& s = w_xe.records;
    const int k = static_cast<int>(s.size());
    int a = 0;
    while (a < k && in_xz.count(s[a].coset)) ++a;
    int b = k;
    while (b > a && in_ze.count(s[b - 1].coset)) --b;

    TripleSplit out;
    out.s_fz.assign(s.begin(), s.begin() + a);
    out.s_zg.assign(s.begin() + b, s.end());
    out.window.assign(s.begin() + a, s.begin() + b);
    if (static_cast<int>(out.window.size()) > 4) {
        const Model& m = ws.model();
        std::string dump = "f4_split: |F| = " + std::to_string(out.window.size()) + " > 4 at window n=" +
                           std::to_string(n) + ", D=" + std::to_string(D) + "; F = {";
        for (const auto& r : out.window) dump += m.word_str(r.coset.rep) + " ";
        throw theorem_violation(dump + "}");
    }
    return out;
}

} // namespace sepcoset
