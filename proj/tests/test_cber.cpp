#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sepcoset/cber.hpp"
#include "sepcoset/errors.hpp"

using namespace sepcoset;

TEST_CASE("canonical forms") {
    // period reduced to its primitive root
    EvPeriodicSeq a = EvPeriodicSeq::canonical({}, {0, 1, 0, 1});
    CHECK(a.period == std::vector<std::uint64_t>{0, 1});
    // preperiod tokens that already follow the period get absorbed
    EvPeriodicSeq b = EvPeriodicSeq::canonical({1}, {0, 1});
    CHECK(b.preperiod.empty());
    CHECK(b.period == std::vector<std::uint64_t>{1, 0});
    CHECK_THROWS_AS(EvPeriodicSeq::canonical({}, {}), input_error);
}

TEST_CASE("documented examples") {
    EvPeriodicSeq w0 = EvPeriodicSeq::canonical({}, {0, 1});
    EvPeriodicSeq w1 = EvPeriodicSeq::canonical({}, {1, 0});
    auto [eq, wit] = tail_equivalent(w0, w1);
    CHECK(eq);
    REQUIRE(wit.has_value());
    CHECK(wit->n == 0);
    CHECK(wit->m == 1);

    EvPeriodicSeq z0 = EvPeriodicSeq::canonical({}, {0});
    EvPeriodicSeq z1 = EvPeriodicSeq::canonical({}, {1});
    CHECK_FALSE(tail_equivalent(z0, z1).first);

    EvPeriodicSeq p0 = EvPeriodicSeq::canonical({2, 3}, {0, 1});
    EvPeriodicSeq p1 = EvPeriodicSeq::canonical({9}, {1, 0});
    auto [eq2, wit2] = tail_equivalent(p0, p1);
    CHECK(eq2);
    REQUIRE(wit2.has_value());
    for (std::size_t i = 0; i < 40; ++i) CHECK(p0.at(wit2->n + i) == p1.at(wit2->m + i));
}

TEST_CASE("decision agrees with bounded brute force on random instances") {
    std::mt19937_64 rng(123);
    auto rand_raw = [&](std::size_t max_pre, std::size_t max_per) {
        std::vector<std::uint64_t> pre, per;
        for (std::size_t i = 0, n = rng() % (max_pre + 1); i < n; ++i) pre.push_back(rng() % 3);
        for (std::size_t i = 0, n = 1 + rng() % max_per; i < n; ++i) per.push_back(rng() % 3);
        return std::make_pair(pre, per);
    };
    for (int t = 0; t < 10000; ++t) {
        auto [pre0, per0] = rand_raw(3, 4);
        auto [pre1, per1] = rand_raw(3, 4);
        EvPeriodicSeq a = EvPeriodicSeq::canonical(pre0, per0);
        EvPeriodicSeq b = EvPeriodicSeq::canonical(pre1, per1);
        bool mine = tail_equivalent(a, b).first;
        bool brute = oracle::brute_tail_equivalent(pre0, per0, pre1, per1);
        CHECK(mine == brute);
    }
}

TEST_CASE("equivalence laws on random triples") {
    std::mt19937_64 rng(321);
    auto rand_seq = [&]() {
        std::vector<std::uint64_t> pre, per;
        for (std::size_t i = 0, n = rng() % 3; i < n; ++i) pre.push_back(rng() % 2);
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) per.push_back(rng() % 2);
        return EvPeriodicSeq::canonical(pre, per);
    };
    for (int t = 0; t < 1000; ++t) {
        EvPeriodicSeq a = rand_seq(), b = rand_seq(), c = rand_seq();
        CHECK(tail_equivalent(a, a).first);
        CHECK(tail_equivalent(a, b).first == tail_equivalent(b, a).first);
        if (tail_equivalent(a, b).first && tail_equivalent(b, c).first) CHECK(tail_equivalent(a, c).first);
    }
}

TEST_CASE("sequence text round trip") {
    EvPeriodicSeq s = EvPeriodicSeq::parse("pre=[2,3];per=[0,1]");
    CHECK(s.preperiod == std::vector<std::uint64_t>{2, 3});
    CHECK(s.period == std::vector<std::uint64_t>{0, 1});
    CHECK(EvPeriodicSeq::parse(s.str()).period == s.period);
}

TEST_CASE("phi pair tailcheck") {
    Workspace ws(GroupModelSpec::builtin_free_cyclic(), ExplorationBudget{}, 7);
    const Model& m = ws.model();
    RayScheme s1;
    s1.period = {Letter::h(0, 3), Letter::x(0, +1)};

    // g = 1: identical prefixes
    TailCheckVerdict v0 = phi_pair_tailcheck(ws, s1, s1, Word{}, 5, 12);
    CHECK(v0.verdict == "tail-agree");
    CHECK(v0.translation_verified);

    // g = one period: the translated ray is the same direction, shifted a block
    Word g = m.parse_word("(ab)^3 a");
    RayScheme s2;
    s2.prefix = {Letter::h(0, 3), Letter::x(0, +1)};
    s2.period = s1.period;
    TailCheckVerdict v1 = phi_pair_tailcheck(ws, s1, s2, g, 5, 12);
    CHECK(v1.verdict == "tail-agree");
    CHECK(v1.translation_verified);
    CHECK(v1.offset1 - v1.offset0 == 2);

    // a direction with disjoint period cosets disagrees
    RayScheme s3;
    s3.period = {Letter::h(0, 3), Letter::x(1, +1)};
    TailCheckVerdict v2 = phi_pair_tailcheck(ws, s1, s3, Word{}, 5, 12);
    CHECK(v2.verdict == "tail-disagree");
    CHECK_FALSE(v2.translation_verified);
}
