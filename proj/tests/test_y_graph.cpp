#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unordered_set>

#include "oracles.hpp"
#include "sepcoset/errors.hpp"
#include "sepcoset/ygraph.hpp"

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

} // namespace

TEST_CASE("y_member examples at D=5") {
    Workspace& ws = ws_fc();
    const Model& m = ws.model();
    CHECK(y_member(ws, Word{}, 5));
    CHECK(y_member(ws, m.parse_word("(ab)^2"), 5));
    CHECK_FALSE(y_member(ws, m.parse_word("(ab)^3"), 5));
    CHECK(y_member(ws, m.parse_word("a"), 5));
}

TEST_CASE("free product Y is trivial") {
    Workspace& ws = ws_fp();
    const YBallInfo& yb = yball(ws, 1);
    REQUIRE(yb.members.size() == 1);
    CHECK(is_identity(yb.members[0]));
    CHECK(yb.unstable.empty());
}

TEST_CASE("y_distance examples") {
    Workspace& ws = ws_fp();
    const Model& m = ws.model();
    // Y = {1}: d_Y is the syllable count
    CHECK(y_distance(ws, Word{}, m.parse_word("aba"), 1).d == ExtNat::of(3));
    CHECK(y_distance(ws, m.parse_word("ab"), m.parse_word("ab"), 1).d == ExtNat::of(0));

    // an H-edge is one step regardless of Y ((ab)^4 is within the letter budget)
    Workspace& wc = ws_fc();
    CHECK(y_distance(wc, Word{}, wc.model().parse_word("(ab)^4"), 5).d == ExtNat::of(1));
}

TEST_CASE("X is contained in Y and Y is symmetric") {
    Workspace& ws = ws_fc();
    const Model& m = ws.model();
    for (int g = 0; g < m.free_rank(); ++g)
        for (int sign : {1, -1}) CHECK(y_member(ws, m.letter_word(Letter::x(g, sign)), 5));

    const YBallInfo& yb = yball(ws, 5);
    std::unordered_set<Word, WordHash> members(yb.members.begin(), yb.members.end());
    const GraphCache& gc = ws.base();
    for (const Word& y : yb.members) {
        Word yi = m.inv(y);
        if (gc.index(yi) >= 0) CHECK(members.count(yi) == 1);
    }
}

TEST_CASE("d_Y never exceeds the relative distance") {
    Workspace& ws = ws_fc();
    const auto& dy = ydist_from_one(ws, 5);
    auto dx = ws.base().bfs(ws.base().id_one());
    for (int v = 0; v < ws.base().size(); ++v) {
        REQUIRE(dy[v] >= 0);
        CHECK(dy[v] <= dx[v]);
    }
}

TEST_CASE("qi_gap examples") {
    Workspace& ws = ws_fp();
    const Model& m = ws.model();
    QiGap q = qi_gap(ws, Word{}, m.parse_word("aba"), 1);
    CHECK(q.s_count == 3);
    CHECK(q.dy == ExtNat::of(3));
    CHECK(q.lower_ok);
    CHECK(q.upper_ok);

    QiGap q0 = qi_gap(ws, m.parse_word("ab"), m.parse_word("ab"), 1);
    CHECK(q0.s_count == 0);
    CHECK(q0.dy == ExtNat::of(0));
    CHECK(q0.lower_ok);
    CHECK(q0.upper_ok);

    Workspace& wc = ws_fc();
    QiGap q1 = qi_gap(wc, Word{}, wc.model().parse_word("(ab)^4"), 5);
    CHECK(q1.s_count == 1);
    CHECK(q1.dy == ExtNat::of(1));
    CHECK(q1.lower_ok);
    CHECK(q1.upper_ok);
}

TEST_CASE("qi sandwich holds on every stable ball vertex (both models)") {
    for (auto [wsp, D] : {std::pair<Workspace*, int>{&ws_fc(), 5}, {&ws_fc(), 7}, {&ws_fp(), 1}}) {
        Workspace& ws = *wsp;
        const auto& counts = sep_counts_from_one(ws, D);
        const auto& dy = ydist_from_one(ws, D);
        const auto& dyb = ydist_from_one_bumped(ws, D);
        const GraphCache& gb = ws.bumped();
        long long checked = 0, failures = 0;
        for (int v = 0; v < ws.base().size(); ++v) {
            int bv = gb.index(ws.base().word(v));
            if (dy[v] < 0 || bv < 0 || dyb[bv] != dy[v]) continue;
            ++checked;
            long long s = counts[v], d = dy[v];
            if (!(d - 1 <= 2 * s && s <= 3 * d)) ++failures;
        }
        CHECK(failures == 0);
        CHECK(checked > ws.base().size() / 2);
    }
}

TEST_CASE("hausdorff gap") {
    Workspace& ws = ws_fp();
    const Model& m = ws.model();
    HausdorffGap h0 = hausdorff_gap(ws, Word{}, m.parse_word("aba"), 1);
    CHECK(h0.gap == 0);  // the two graphs coincide when Y = {1} and X is empty

    HausdorffGap hs = hausdorff_gap(ws, m.parse_word("ab"), m.parse_word("ab"), 1);
    CHECK(hs.gap == 0);

    Workspace& wc = ws_fc();
    HausdorffGap h1 = hausdorff_gap(wc, Word{}, wc.model().parse_word("b(ab)^3"), 5);
    CHECK(h1.gap <= 2);
}

TEST_CASE("acylindricity probe") {
    Workspace& ws = ws_fp();
    // eps = 0: only g = 1 fixes both points
    AcylProbe p0 = acylindricity_probe(ws, 0, 0, 1, 5, 42);
    CHECK(p0.pairs_sampled > 0);
    CHECK(p0.max_overlap == 1);

    AcylProbe p1 = acylindricity_probe(ws, 1, 3, 1, 12, 42);
    CHECK(p1.max_overlap <= 8);  // |A \ 1| + |B \ 1| + identity margin

    AcylProbe pe = acylindricity_probe(ws, 1, 100, 1, 5, 42);
    CHECK(pe.pairs_sampled == 0);
    CHECK(pe.max_overlap == 0);
}

TEST_CASE("short-pair diameter bound") {
    // d_Y(1,y) <= 1 forces every vertex of every relative geodesic to stay
    // within d_Y <= 1 of the endpoint
    Workspace& ws = ws_fc();
    const Model& m = ws.model();
    const GraphCache& gc = ws.base();
    const auto& dy = ydist_from_one(ws, 5);
    std::mt19937_64 rng(5);
    int done = 0;
    for (int t = 0; t < 400 && done < 60; ++t) {
        int b = static_cast<int>(rng() % gc.size());
        if (dy[b] != 1 || m.x_length(gc.word(b)) > 6) continue;
        GeodesicEnum ge = enumerate_geodesics(gc, gc.id_one(), b, 16);
        for (const auto& labs : ge.labels) {
            PathRec p{Word{}, labs, true};
            for (const Word& z : path_vertices(m, p)) {
                int zi = gc.index(z);
                REQUIRE(zi >= 0);
                CHECK(dy[zi] <= 1);
            }
        }
        ++done;
    }
    CHECK(done >= 30);
}
