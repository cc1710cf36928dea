#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocs/errors.hpp"
#include "ocs/group.hpp"
#include "ocs/rational.hpp"

#include <random>
#include <set>

using namespace ocs;

namespace {

GroupTable klein_four()
{
    return group_from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

WreathElement random_wreath(std::mt19937& rng, const GroupTable& g, int n)
{
    WreathElement w = wreath_identity(g, n);
    std::shuffle(w.perm.begin(), w.perm.end(), rng);
    std::uniform_int_distribution<int> col(0, g.order - 1);
    for (auto& c : w.colors)
        c = col(rng);
    return w;
}

} // namespace

TEST_CASE("cyclic groups")
{
    GroupTable g1 = cyclic_group(1);
    CHECK(g1.order == 1);
    CHECK(g1.identity == 0);

    GroupTable g2 = cyclic_group(2);
    CHECK(g2.mul == std::vector<std::vector<int>>{{0, 1}, {1, 0}});

    GroupTable g4 = cyclic_group(4);
    CHECK(g4.inv == std::vector<int>{0, 3, 2, 1});
    // brute-force inverse search
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (g4.op(a, b) == g4.identity)
                CHECK(g4.inv[a] == b);
    CHECK(element_order(g4, 1) == 4);
    CHECK(element_order(g4, 2) == 2);
}

TEST_CASE("table validation")
{
    CHECK_NOTHROW(klein_four());
    // not associative: a Latin square without a group structure
    CHECK_THROWS_AS(group_from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), Error);
    CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(group_from_table({{0, 5}, {1, 0}}), Error);
    CHECK_THROWS_AS(cyclic_group(0), Error);
}

TEST_CASE("subgroups")
{
    GroupTable g4 = cyclic_group(4);
    CHECK(is_subgroup(g4, {0, 2}));
    CHECK_FALSE(is_subgroup(g4, {0, 1}));
    CHECK_FALSE(is_subgroup(g4, {1, 3}));
    GroupTable h = extract_subgroup(g4, {2, 0});
    CHECK(h.order == 2);
    CHECK(h.identity == 0);
    CHECK(h.op(1, 1) == 0);
    CHECK_THROWS_AS(extract_subgroup(g4, {0, 1}), Error);
}

TEST_CASE("orbits and stabilizers")
{
    SUBCASE("Z2 trivial on two points")
    {
        GSetSpec s = make_gset(cyclic_group(2), 2, {}, {});
        auto orbits = orbits_and_stabilizers(s);
        REQUIRE(orbits.size() == 2);
        for (const auto& o : orbits) {
            CHECK(o.points.size() == 1);
            CHECK(o.stabilizer == std::vector<int>{0, 1});
        }
    }
    SUBCASE("Z2 by swap")
    {
        GSetSpec s = make_gset(cyclic_group(2), 2, {{0, 1}, {1, 0}}, {});
        auto orbits = orbits_and_stabilizers(s);
        REQUIRE(orbits.size() == 1);
        CHECK(orbits[0].points == std::vector<int>{0, 1});
        CHECK(orbits[0].stabilizer == std::vector<int>{0});
    }
    SUBCASE("Z4 through its quotient")
    {
        std::vector<std::vector<int>> action(4, std::vector<int>(2));
        for (int g = 0; g < 4; ++g)
            for (int s = 0; s < 2; ++s)
                action[g][s] = (s + g) % 2;
        GSetSpec s = make_gset(cyclic_group(4), 2, action, {});
        auto orbits = orbits_and_stabilizers(s);
        REQUIRE(orbits.size() == 1);
        CHECK(orbits[0].points.size() == 2);
        CHECK(orbits[0].stabilizer == std::vector<int>{0, 2});
        // exhaustive fixed-point check
        for (int g = 0; g < 4; ++g)
            CHECK((s.act(g, 0) == 0) == (g % 2 == 0));
    }
}

TEST_CASE("orbit sizes add up to |S|")
{
    std::vector<GSetSpec> specs = {
        make_gset(cyclic_group(2), 3, {{0, 1, 2}, {1, 0, 2}}, {2}),
        make_gset(cyclic_group(3), 4, {{0, 1, 2, 3}, {1, 2, 0, 3}, {2, 0, 1, 3}}, {}),
        make_gset(klein_four(), 4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {0, 1, 2, 3}),
    };
    for (const auto& s : specs) {
        int total = 0;
        for (const auto& o : orbits_and_stabilizers(s))
            total += s.group.order / static_cast<int>(o.stabilizer.size());
        CHECK(total == s.size);
    }
}

TEST_CASE("T must be invariant")
{
    CHECK_THROWS_AS(make_gset(cyclic_group(2), 2, {{0, 1}, {1, 0}}, {0}), Error);
    CHECK_NOTHROW(make_gset(cyclic_group(2), 2, {{0, 1}, {1, 0}}, {0, 1}));
    // not an action
    CHECK_THROWS_AS(make_gset(cyclic_group(3), 2, {{0, 1}, {1, 0}, {1, 0}}, {}), Error);
}

TEST_CASE("wreath composition")
{
    GroupTable z2 = cyclic_group(2);
    WreathElement w{{1, 0}, {1, 0}};
    CHECK(wreath_compose(z2, w, wreath_identity(z2, 2)) == w);
    CHECK(wreath_compose(z2, wreath_identity(z2, 2), w) == w);
    WreathElement sq = wreath_compose(z2, w, w);
    CHECK(sq.colors == std::vector<int>{1, 1});
    CHECK(sq.perm == std::vector<int>{0, 1});
    CHECK(wreath_compose(z2, w, wreath_inverse(z2, w)) == wreath_identity(z2, 2));
}

TEST_CASE("wreath associativity on random triples")
{
    std::mt19937 rng(7);
    std::vector<GroupTable> groups = {cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()};
    std::uniform_int_distribution<int> pick_g(0, static_cast<int>(groups.size()) - 1), pick_n(1, 4);
    for (int t = 0; t < 1000; ++t) {
        const GroupTable& g = groups[pick_g(rng)];
        const int n = pick_n(rng);
        auto a = random_wreath(rng, g, n), b = random_wreath(rng, g, n), c = random_wreath(rng, g, n);
        CHECK(wreath_compose(g, wreath_compose(g, a, b), c) == wreath_compose(g, a, wreath_compose(g, b, c)));
    }
}

TEST_CASE("wreath group order")
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n) {
            auto all = wreath_group(cyclic_group(k), n);
            std::set<std::pair<std::vector<int>, std::vector<int>>> distinct;
            for (const auto& w : all)
                distinct.insert({w.colors, w.perm});
            Integer expected = factorial(n);
            for (int i = 0; i < n; ++i)
                expected *= k;
            CHECK(Integer(distinct.size()) == expected);
            CHECK(distinct.size() == all.size());
        }
    // closure
    GroupTable z2 = cyclic_group(2);
    auto all = wreath_group(z2, 2);
    for (const auto& a : all)
        for (const auto& b : all)
            CHECK(std::find(all.begin(), all.end(), wreath_compose(z2, a, b)) != all.end());
}

TEST_CASE("rationals")
{
    CHECK(to_pq(Rational(3)) == "3/1");
    CHECK(to_pq(Rational(-2, 4)) == "-1/2");
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(to_int64(Rational(5)) == 5);
    CHECK_THROWS_AS(to_int64(Rational(1, 2)), Error);
    CHECK(factorial(10) == 3628800);
}
