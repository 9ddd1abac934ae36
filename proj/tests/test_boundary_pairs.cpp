#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepcoset/boundary.hpp"
#include "sepcoset/errors.hpp"

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

RayScheme fc_plus() {
    RayScheme s;
    s.period = {Letter::h(0, 3), Letter::x(0, +1)};
    return s;
}
RayScheme fc_minus() {
    RayScheme s;
    s.period = {Letter::x(0, -1), Letter::h(0, -3)};
    return s;
}

} // namespace

TEST_CASE("central window join and records") {
    Workspace& ws = ws_fc();
    BiInfiniteWindow w = central_window(ws, fc_minus(), fc_plus(), 4, 5);
    CHECK(w.central.labels.size() == 8);
    // separating cosets of both sides appear in one merged order
    CHECK(w.records.size() == 4);
    // the window through the base is geodesic, so distances add up
    std::vector<Word> vs = path_vertices(ws.model(), w.central);
    CHECK(vs.size() == 9);
    CHECK(vs[4] == Word{});  // passes through the base

    BiInfiniteWindow w0 = central_window(ws, fc_minus(), fc_plus(), 0, 5);
    CHECK(w0.records.empty());
    CHECK(w0.central.labels.empty());
}

TEST_CASE("central window rejects a non-geodesic join") {
    Workspace& ws = ws_fc();
    // both ends in the same direction: the join backtracks
    CHECK_THROWS_AS(central_window(ws, fc_plus(), fc_plus(), 2, 5), input_error);
}

TEST_CASE("free product window merges the two syllable directions") {
    Workspace& ws = ws_fp();
    RayScheme plus;
    plus.period = {Letter::h(0, 1), Letter::h(1, 1)};  // a b a b ...
    RayScheme minus;
    minus.period = {Letter::h(1, 4), Letter::h(0, 2)};  // b^4 a^2 ... (the inverse direction)
    BiInfiniteWindow w = central_window(ws, minus, plus, 3, 1);
    CHECK(w.records.size() == 6);  // one essential coset per syllable on both sides
}

TEST_CASE("window symmetry") {
    Workspace& ws = ws_fc();
    BiInfiniteWindow w1 = central_window(ws, fc_minus(), fc_plus(), 4, 5);
    BiInfiniteWindow w2 = central_window(ws, fc_plus(), fc_minus(), 4, 5);
    REQUIRE(w1.records.size() == w2.records.size());
    for (std::size_t i = 0; i < w1.records.size(); ++i)
        CHECK(w1.records[i].coset == w2.records[w2.records.size() - 1 - i].coset);
}

TEST_CASE("window stability under growth") {
    Workspace& ws = ws_fc();
    BiInfiniteWindow w1 = central_window(ws, fc_minus(), fc_plus(), 4, 5);
    BiInfiniteWindow w2 = central_window(ws, fc_minus(), fc_plus(), 6, 5);
    // records of the smaller window appear in the larger one in order
    std::size_t at = 0;
    for (const auto& r : w1.records) {
        bool found = false;
        for (; at < w2.records.size(); ++at)
            if (w2.records[at].coset == r.coset) {
                found = true;
                ++at;
                break;
            }
        CHECK(found);
    }
}

TEST_CASE("dichotomy assigns window cosets to a side") {
    Workspace& ws = ws_fp();
    RayScheme xi;
    xi.period = {Letter::h(1, 4), Letter::h(0, 2)};
    RayScheme eta;
    eta.period = {Letter::h(0, 1), Letter::h(1, 1)};
    RayScheme zeta;
    zeta.period = {Letter::h(0, 2), Letter::h(1, 3)};
    BiInfiniteWindow w = central_window(ws, xi, eta, 3, 1);
    REQUIRE(w.records.size() >= 4);
    // a deep eta-tail coset lies on the zeta->eta side, a deep xi-tail coset
    // on the xi->zeta side
    DichotomySide tail_eta = dichotomy_check(ws, xi, eta, zeta, w.records.back(), 3, 1, Ratio{0, 1});
    CHECK(tail_eta == DichotomySide::toward_plus);
    DichotomySide tail_xi = dichotomy_check(ws, xi, eta, zeta, w.records.front(), 3, 1, Ratio{0, 1});
    CHECK(tail_xi == DichotomySide::toward_minus);

    // zeta sharing the eta tail pushes every early coset to the xi side
    RayScheme zeta2 = eta;
    zeta2.prefix = {Letter::h(0, 2)};
    DichotomySide shared = dichotomy_check(ws, xi, eta, zeta2, w.records.front(), 3, 1, Ratio{0, 1});
    CHECK(shared == DichotomySide::toward_minus);

    CHECK_THROWS_AS(dichotomy_check(ws, xi, eta, zeta, w.records.front(), 3, 0, Ratio{1, 1}), input_error);
}

TEST_CASE("splice across a deep shared coset") {
    Workspace& ws = ws_fc();
    // use the deeper ray (gap 8 > 3*C-hat = 6) so the splice hypothesis holds
    RayScheme plus;
    plus.period = {Letter::h(0, 4), Letter::x(0, +1)};
    RayScheme minus;
    minus.period = {Letter::x(0, -1), Letter::h(0, -4)};
    BiInfiniteWindow w = central_window(ws, minus, plus, 4, 5);

    PathRec ray = ray_truncation(ws, plus, 4);
    // find the shared coset (the ray's first period coset)
    auto pens = essential_penetrations(ws, ray, 5);
    REQUIRE(!pens.empty());

    PathRec sp = splice(ws, w.central, ray, pens[0].coset, 5, Ratio{2, 1});
    CHECK(sp.geodesic);

    // alpha = beta restricted: splicing the window with itself returns a geodesic
    PathRec sp2 = splice(ws, w.central, w.central, pens[0].coset, 5, Ratio{2, 1});
    CHECK(sp2.geodesic);

    // a shallow coset is refused
    RayScheme shallow;
    shallow.period = {Letter::h(0, 3), Letter::x(0, +1)};
    PathRec ray2 = ray_truncation(ws, shallow, 4);
    auto pens2 = essential_penetrations(ws, ray2, 5);
    REQUIRE(!pens2.empty());
    CHECK(pens2[0].gap == ExtNat::of(6));  // not > 3*C-hat = 6
    BiInfiniteWindow wsh = central_window(
        ws, [] { RayScheme s; s.period = {Letter::x(0, -1), Letter::h(0, -3)}; return s; }(), shallow, 4, 5);
    CHECK_THROWS_AS(splice(ws, wsh.central, ray2, pens2[0].coset, 5, Ratio{2, 1}), input_error);
}

TEST_CASE("f4 split on windows") {
    Workspace& ws = ws_fp();
    RayScheme xi;
    xi.period = {Letter::h(1, 4), Letter::h(0, 2)};
    RayScheme eta;
    eta.period = {Letter::h(0, 1), Letter::h(1, 1)};
    RayScheme zeta;
    zeta.period = {Letter::h(0, 2), Letter::h(1, 3)};

    TripleSplit t = f4_split(ws, xi, eta, zeta, 3, 1, Ratio{0, 1});
    BiInfiniteWindow w = central_window(ws, xi, eta, 3, 1);
    CHECK(t.s_fz.size() + t.s_zg.size() + t.window.size() == w.records.size());
    CHECK(t.window.size() <= 4);

    // degenerate zeta = xi: everything sits on the zeta->eta side
    TripleSplit td = f4_split(ws, xi, eta, xi, 3, 1, Ratio{0, 1});
    CHECK(td.s_fz.empty());
    CHECK(td.window.empty());
    CHECK(td.s_zg.size() == w.records.size());
}

TEST_CASE("appendix penetration order along a ray") {
    // a ray toward the plus end penetrates the window cosets in order: past
    // its exit of C_i it still meets C_{i+1}
    Workspace& ws = ws_fc();
    RayScheme plus = fc_plus();
    RayScheme minus = fc_minus();
    BiInfiniteWindow w = central_window(ws, minus, plus, 6, 5);
    PathRec ray = ray_truncation(ws, plus, 6);
    auto comps = components(ws.model(), ray, false);
    for (std::size_t i = 0; i + 1 < w.records.size(); ++i) {
        const Component* ci = nullptr;
        for (const auto& c : comps)
            if (c.coset == w.records[i].coset) ci = &c;
        if (!ci) continue;
        bool next_found = false;
        for (const auto& c : comps)
            if (c.coset == w.records[i + 1].coset && c.first_edge > ci->last_edge) next_found = true;
        CHECK(next_found);
    }
}
