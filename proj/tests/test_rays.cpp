#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sepcoset/errors.hpp"
#include "sepcoset/rays.hpp"
#include "sepcoset/relgraph.hpp"

using namespace sepcoset;

namespace {

Workspace& ws_fc() {
    static Workspace ws(GroupModelSpec::builtin_free_cyclic(), ExplorationBudget{}, 7);
    return ws;
}
Workspace& ws_fp() {
    static Workspace ws(GroupModelSpec::builtin_free_product(), ExplorationBudget{}, 7);
    return ws;
}

RayScheme documented_fc() {
    RayScheme s;
    s.period = {Letter::h(0, 3), Letter::x(0, +1)};  // [H:(ab)^3, X:a]
    return s;
}

} // namespace

TEST_CASE("ray truncation") {
    Workspace& ws = ws_fc();
    RayScheme s = documented_fc();
    PathRec p = ray_truncation(ws, s, 4);
    CHECK(p.geodesic);
    CHECK(p.labels.size() == 4);
    std::vector<Word> vs = path_vertices(ws.model(), p);
    CHECK(ws.model().word_str(vs[1]) == "ababab");
    CHECK(ws.model().word_str(vs[2]) == "abababa");

    PathRec p0 = ray_truncation(ws, s, 0);
    CHECK(p0.labels.empty());

    RayScheme bad;
    bad.period = {Letter::x(0, 1), Letter::x(0, -1)};  // backtracks at n=2
    CHECK_THROWS_AS(ray_truncation(ws, bad, 2), input_error);
}

TEST_CASE("ray scheme parsing") {
    const Model& m = ws_fc().model();
    RayScheme s = RayScheme::parse(m, "base=1;prefix=[];period=[h:(ab)^3, x:a]");
    CHECK(is_identity(s.base));
    CHECK(s.prefix.empty());
    REQUIRE(s.period.size() == 2);
    CHECK(s.period[0] == Letter::h(0, 3));
    CHECK(s.period[1] == Letter::x(0, 1));
    CHECK_THROWS_AS(RayScheme::parse(m, "base=1;period=[]"), input_error);
}

TEST_CASE("ray separating cosets per depth") {
    Workspace& ws = ws_fc();
    const Model& m = ws.model();
    RayScheme s = documented_fc();

    CHECK(ray_sep_cosets(ws, s, 0, 5).empty());

    auto r4 = ray_sep_cosets(ws, s, 4, 5);
    REQUIRE(r4.size() == 2);
    CHECK(is_identity(r4[0].coset.rep));
    CHECK(r4[0].gap == ExtNat::of(6));
    CHECK(m.word_str(r4[1].coset.rep) == "abababa");  // (ab)^3 a * H
    CHECK(r4[1].gap == ExtNat::of(6));

    // one new record per period over depths 2..16 (acceptance criterion window)
    for (int depth = 2; depth <= 16; depth += 2) {
        auto recs = ray_sep_cosets(ws, s, depth, 5);
        CHECK(static_cast<int>(recs.size()) == depth / 2);
    }

    // prefix stability across depths
    auto r8 = ray_sep_cosets(ws, s, 8, 5);
    for (std::size_t i = 0; i < r4.size(); ++i) CHECK(r8[i].coset == r4[i].coset);
}

TEST_CASE("free product syllable ray") {
    Workspace& ws = ws_fp();
    RayScheme s;
    s.period = {Letter::h(0, 1), Letter::h(1, 1)};  // a, b, a, b, ...
    auto recs = ray_sep_cosets(ws, s, 6, 1);
    CHECK(recs.size() == 6);  // one coset per syllable
}

TEST_CASE("ray penetrates its separating cosets exactly once, entrance first") {
    Workspace& ws = ws_fc();
    const Model& m = ws.model();
    RayScheme s = documented_fc();
    PathRec tr = ray_truncation(ws, s, 8);
    auto recs = ray_sep_cosets(ws, s, 8, 5);
    auto comps = components(m, tr, false);
    for (const auto& r : recs) {
        int hits = 0;
        for (const auto& c : comps)
            if (c.coset == r.coset) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("convergence check on the documented scheme") {
    Workspace& ws = ws_fc();
    RayScheme s = documented_fc();
    ConvergenceReport rep = convergence_check(ws, s, {4, 8, 12}, 5);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].s_count == 2);
    CHECK(rep.rows[1].s_count == 4);
    CHECK(rep.rows[2].s_count == 6);
    CHECK(rep.verdict == "diverging");
}

TEST_CASE("convergence check: the period with shallow H-edges still diverges via detours") {
    // the scheme's own gaps are 4 <= D=5, but S(x0,xn;D) is a union over all
    // geodesics, and (ab)^3 b^-1 detours essentially penetrate the same cosets
    Workspace& ws = ws_fc();
    RayScheme s;
    s.period = {Letter::h(0, 2), Letter::x(0, +1)};
    ConvergenceReport rep = convergence_check(ws, s, {4, 8, 12}, 5);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].s_count == 2);
    CHECK(rep.rows[1].s_count == 4);
    CHECK(rep.rows[2].s_count == 6);
    CHECK(rep.verdict == "diverging");
}

TEST_CASE("convergence check: a pure X-ray has no separating cosets at tested depths") {
    Workspace& ws = ws_fc();
    RayScheme s;
    s.period = {Letter::x(0, +1)};  // a, a^2, a^3, ...
    ConvergenceReport rep = convergence_check(ws, s, {2, 4, 6}, 5);
    for (const auto& row : rep.rows) CHECK(row.s_count == 0);
    CHECK(rep.verdict == "not diverging via coset count at tested depths");
}

TEST_CASE("concat_point") {
    Workspace& wf = ws_fp();
    RayScheme rp;
    rp.period = {Letter::h(1, 1), Letter::h(0, 1)};  // b, a, b, a, ...
    CHECK(concat_point(wf, wf.model().parse_word("a"), rp) == 0);

    Workspace& wc = ws_fc();
    RayScheme s = documented_fc();
    CHECK(concat_point(wc, wc.model().parse_word("a^-1"), s) == 0);

    // x on the ray at index 5: stabilizes no later than 5
    std::vector<Word> vs = ray_vertices(wc.model(), s, 6);
    int k = concat_point(wc, vs[5], s);
    CHECK(k <= 5);
}

TEST_CASE("phi prefix for element targets") {
    Workspace& ws = ws_fp();
    const Model& m = ws.model();
    PhiPrefix p0 = phi_prefix(ws, Word{});
    CHECK(p0.labels.empty());

    PhiPrefix p1 = phi_prefix(ws, m.parse_word("aba"));
    CHECK(p1.labels == std::vector<Letter>{Letter::h(0, 1), Letter::h(1, 1), Letter::h(0, 1)});

    Workspace& wc = ws_fc();
    PhiPrefix p2 = phi_prefix(wc, wc.model().parse_word("(ab)^4"));
    CHECK(p2.labels == std::vector<Letter>{Letter::h(0, 4)});
}

TEST_CASE("phi prefix is the lexicographic minimum over all geodesics") {
    for (Workspace* wsp : {&ws_fc(), &ws_fp()}) {
        Workspace& ws = *wsp;
        const Model& m = ws.model();
        const GraphCache& gc = ws.base();
        std::vector<int> pool;
        for (int v = 0; v < gc.size(); ++v)
            if (m.x_length(gc.word(v)) <= 5) pool.push_back(v);
        std::mt19937_64 rng(19);
        int done = 0;
        for (int t = 0; t < 200 && done < 80; ++t) {
            const Word& g = gc.word(pool[rng() % pool.size()]);
            DistValue dv = rel_distance(ws, Word{}, g);
            if (!dv.stable) continue;
            GeodesicsResult gr = all_geodesics(ws, Word{}, g);
            if (gr.overflow || gr.paths.empty()) continue;
            PhiPrefix phi = phi_prefix(ws, g);
            CHECK(phi.labels == gr.paths.front().labels);  // enumeration is lex-ordered
            ++done;
        }
        CHECK(done >= 60);
    }
}

TEST_CASE("phi prefix for ray targets certifies a stable window") {
    Workspace& ws = ws_fc();
    RayScheme s = documented_fc();
    PhiPrefix p = phi_prefix_ray(ws, s, 8, 5);
    CHECK(static_cast<int>(p.labels.size()) == 8);
    // records at depth 8: entrances at 0,2,4,6; certified up to the third's entrance
    CHECK(p.certified_len == 4);
    // certified prefix survives a budget bump
    Workspace ws2(GroupModelSpec::builtin_free_cyclic(), ExplorationBudget{}.bumped(), 7);
    PhiPrefix p2 = phi_prefix_ray(ws2, s, 8, 5);
    for (int i = 0; i < p.certified_len; ++i) CHECK(p.labels[i] == p2.labels[i]);
}

TEST_CASE("align_same_limit") {
    Workspace& ws = ws_fc();
    RayScheme s1 = documented_fc();

    // dropping one full period gives the same limit with zero gaps
    RayScheme s2;
    s2.base = ws.model().parse_word("(ab)^3 a");
    s2.period = s1.period;
    auto al = align_same_limit(ws, s1, s2, 5, 10, Ratio{2, 1});
    CHECK(al.size() >= 3);
    for (const auto& a : al) {
        CHECK(a.entrance_gap == ExtNat::of(0));
        CHECK(a.exit_gap == ExtNat::of(0));
    }

    // documented second scheme: prefix [x:a] from base a^-1, then the period
    RayScheme s3;
    s3.base = ws.model().parse_word("a^-1");
    s3.prefix = {Letter::x(0, 1)};
    s3.period = s1.period;
    auto al3 = align_same_limit(ws, s1, s3, 5, 10, Ratio{2, 1});
    CHECK(al3.size() >= 4);
    for (const auto& a : al3) {
        CHECK(a.entrance_gap == ExtNat::of(0));
        CHECK(a.exit_gap == ExtNat::of(0));
    }

    // disjoint directions have no common tail
    RayScheme s4;
    s4.period = {Letter::h(0, 3), Letter::x(1, +1)};
    CHECK_THROWS_AS(align_same_limit(ws, s1, s4, 5, 10, Ratio{2, 1}), partiality_error);
}

TEST_CASE("pigeonhole K") {
    Workspace& wf = ws_fp();
    CHECK(pigeonhole_K(wf, 0) == 1);
    CHECK(pigeonhole_K(wf, 8) == 1);
    CHECK(pigeonhole_K(wf, 100) == 1);

    Workspace& wc = ws_fc();
    // t=0: only the identity
    CHECK(pigeonhole_K(wc, 0) == 1);
    // t=8: {k : d-hat(1,(ab)^k) <= 8} = {|k| <= 4} plus the identity -> 9^2
    CHECK(pigeonhole_K(wc, 8) == 81);
    CHECK(pigeonhole_K(wc, 3) == 9);  // d-hat = 2|k| <= 3 -> |k| <= 1, plus the identity
    CHECK(pigeonhole_K(wc, 1) == 1);
}
