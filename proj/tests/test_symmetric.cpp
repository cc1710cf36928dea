#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocs/errors.hpp"
#include "ocs/homology.hpp"
#include "ocs/symmetric.hpp"
#include "support.hpp"

#include <numeric>

using namespace ocs;

namespace {

int fixed_points(const std::vector<int>& perm)
{
    int f = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        f += perm[i] == static_cast<int>(i);
    return f;
}

int sign(const std::vector<int>& perm)
{
    int s = 1;
    for (int len : cycle_type(perm))
        if (len % 2 == 0)
            s = -s;
    return s;
}

// Permutation character of S_m on k-subsets, by counting fixed subsets.
ClassFunction subset_character(int m, int k)
{
    ClassFunction f;
    f.m = m;
    for (const auto& mu : partitions_of(m)) {
        auto perm = cycle_permutation(mu);
        int fixed = 0;
        for (int s = 0; s < (1 << m); ++s) {
            if (__builtin_popcount(s) != k)
                continue;
            int image = 0;
            for (int i = 0; i < m; ++i)
                if (s >> i & 1)
                    image |= 1 << perm[i];
            fixed += image == s;
        }
        f.values[mu] = fixed;
    }
    return f;
}

ClassFunction regular_character(int m)
{
    ClassFunction f;
    f.m = m;
    for (const auto& mu : partitions_of(m))
        f.values[mu] = fixed_points(cycle_permutation(mu)) == m ? Rational(factorial(m)) : Rational(0);
    return f;
}

} // namespace

TEST_CASE("partitions")
{
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(4) == std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
    const std::vector<int> p = {1, 1, 2, 3, 5, 7, 11, 15};
    for (int m = 0; m <= 7; ++m)
        CHECK(static_cast<int>(partitions_of(m).size()) == p[m]);
    CHECK_THROWS_AS(validate_partition({1, 2}), Error);
    CHECK_THROWS_AS(validate_partition({2, 0}), Error);
    for (int m = 1; m <= 7; ++m) {
        Integer total = 0;
        for (const auto& mu : partitions_of(m)) {
            total += class_size(mu);
            CHECK(cycle_type(cycle_permutation(mu)) == mu);
        }
        CHECK(total == factorial(m));
    }
}

TEST_CASE("character values")
{
    for (int m = 1; m <= 6; ++m)
        for (const auto& mu : partitions_of(m)) {
            CHECK(mn_character({m}, mu) == 1);
            auto perm = cycle_permutation(mu);
            CHECK(mn_character(Partition(m, 1), mu) == sign(perm));
            if (m >= 2)
                CHECK(mn_character({m - 1, 1}, mu) == fixed_points(perm) - 1);
        }
    CHECK(mn_character({2, 1}, {3}) == -1);
    CHECK(mn_character({2, 2}, {1, 1, 1, 1}) == 2);
    CHECK_THROWS_AS(mn_character({2, 1}, {2}), Error);
}

TEST_CASE("dimensions match the hook-length formula")
{
    for (int m = 0; m <= 7; ++m)
        for (const auto& lambda : partitions_of(m))
            CHECK(Integer(mn_character(lambda, Partition(m, 1))) == hook_dimension(lambda));
}

TEST_CASE("orthogonality")
{
    for (int m = 1; m <= 7; ++m) {
        const auto parts = partitions_of(m);
        for (const auto& a : parts)
            for (const auto& b : parts)
                CHECK(inner_product(irreducible_character(a), irreducible_character(b)) == (a == b ? 1 : 0));
        // column orthogonality
        const CharacterTable& t = character_table(m);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j) {
                Integer s = 0;
                for (std::size_t l = 0; l < parts.size(); ++l)
                    s += Integer(t.values[l][i]) * t.values[l][j];
                CHECK(s == (i == j ? centralizer_order(parts[i]) : Integer(0)));
            }
    }
}

TEST_CASE("decompositions")
{
    auto reg = decompose(regular_character(3));
    CHECK(reg == std::map<Partition, Integer>{{{3}, 1}, {{2, 1}, 2}, {{1, 1, 1}, 1}});

    auto pairs = decompose(subset_character(4, 2));
    CHECK(pairs == std::map<Partition, Integer>{{{4}, 1}, {{3, 1}, 1}, {{2, 2}, 1}});

    ClassFunction zero;
    zero.m = 3;
    for (const auto& mu : partitions_of(3))
        zero.values[mu] = 0;
    CHECK(decompose(zero).empty());

    ClassFunction half = irreducible_character({3});
    for (auto& [mu, v] : half.values)
        v /= 2;
    try {
        decompose(half);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "not_a_character");
    }
    ClassFunction partial;
    partial.m = 2;
    partial.values[{2}] = 1;
    CHECK_THROWS_AS(decompose(partial), Error);
}

TEST_CASE("padding")
{
    CHECK(pad_partition({}, 5) == Partition{5});
    CHECK(pad_partition({1}, 4) == Partition{3, 1});
    CHECK(pad_partition({2, 1}, 5) == Partition{2, 2, 1});
    CHECK_THROWS_AS(pad_partition({2, 2}, 5), Error);
    CHECK(strip_partition(pad_partition({2, 1}, 7)) == Partition{2, 1});
    CHECK(strip_partition({}) == Partition{});
}

TEST_CASE("Whitney characters of partition lattices")
{
    auto c = testing::stirling_first(6);
    for (int n = 2; n <= 6; ++n) {
        DowlingPoset dp = build_poset(partition_lattice_spec(n));
        ClassFunction r1 = whitney_character(dp, 1);
        for (const auto& [mu, v] : r1.values)
            CHECK(v == subset_character(n, 2)(mu));
        for (int r = 0; r < n; ++r) {
            ClassFunction f = whitney_character(dp, r);
            CHECK(f(Partition(n, 1)) == c[n][n - r]);
            CHECK_NOTHROW(decompose(f));
        }
    }
    // the top rank is the sign-twisted Lie representation: dimension (n-1)!
    DowlingPoset q4 = build_poset(partition_lattice_spec(4));
    CHECK(decompose(whitney_character(q4, 3)) == std::map<Partition, Integer>{{{3, 1}, 1}, {{2, 1, 1}, 1}});
}

TEST_CASE("multiplicity stability")
{
    auto sequence = [](int rank, int lo, int hi) {
        std::map<int, ClassFunction> seq;
        for (int n = lo; n <= hi; ++n)
            seq[n] = whitney_character(build_poset(partition_lattice_spec(n)), rank);
        return seq;
    };

    StableMultiplicityReport r1 = stable_multiplicity_check(sequence(1, 4, 6), Rational(2));
    CHECK(r1.stable);
    CHECK(r1.size_bound_ok);
    CHECK(r1.stable_names == std::map<Partition, Integer>{{{}, 1}, {{1}, 1}, {{2}, 1}});
    for (int n = 4; n <= 6; ++n)
        CHECK(r1.names[n] == r1.stable_names);

    StableMultiplicityReport r0 = stable_multiplicity_check(sequence(0, 3, 6));
    CHECK(r0.stable);
    CHECK(r0.stable_names == std::map<Partition, Integer>{{{}, 1}});

    // a tighter bound is reported as violated
    CHECK_FALSE(stable_multiplicity_check(sequence(1, 4, 6), Rational(1)).size_bound_ok);

    auto perturbed = sequence(1, 4, 6);
    for (auto& [mu, v] : perturbed[5].values)
        v += 1; // add a trivial summand at n = 5
    StableMultiplicityReport bad = stable_multiplicity_check(perturbed);
    CHECK_FALSE(bad.stable);
    REQUIRE(bad.first_violation.has_value());
    CHECK(*bad.first_violation == 5);
}

TEST_CASE("Whitney characters refuse non-concentrated posets")
{
    // two disjoint edges between the rank-1 and rank-2 elements: the open
    // interval below the top is disconnected but has rank 3
    DowlingPoset fake = build_poset(partition_lattice_spec(3));
    fake.poset = Poset::from_covers(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 6}, {4, 6}, {5, 7}, {6, 7}});
    try {
        whitney_character(fake, 3);
        FAIL("expected a refusal");
    } catch (const Error& e) {
        CHECK(e.code() == "not_concentrated");
    }
}
