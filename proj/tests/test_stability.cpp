#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocs/errors.hpp"
#include "ocs/stability.hpp"

#include <random>

using namespace ocs;

namespace {

SpaceInput all_ones(int d)
{
    SpaceInput s;
    s.name = "b=1";
    s.betti.assign(d + 1, 1);
    s.i_acyclic = true;
    return s;
}

SpaceInput euclidean(int d)
{
    SpaceInput s;
    s.name = "R" + std::to_string(d);
    s.betti.assign(d + 1, 0);
    s.betti[d] = 1;
    s.i_acyclic = true;
    return s;
}

std::string pt(const StabilityStep& s)
{
    return "(" + to_pq(s.point.x) + "," + to_pq(s.point.y) + ")";
}

// Points of the locus other than v, with families listed up to n_cap.
std::vector<LocusPoint> others(const GenerationLocus& locus, const LocusPoint& v, int n_cap)
{
    std::vector<LocusPoint> out;
    for (const auto& p : locus_points(locus, n_cap))
        if (p.label != v.label)
            out.push_back(p);
    return out;
}

} // namespace

TEST_CASE("family norms")
{
    for (int i = 0; i <= 5; ++i)
        for (int n = 1; n <= 100; ++n) {
            LocusFamily f{i, {}};
            CHECK(family_norm(i, n) == f.member(n).norm());
        }
}

TEST_CASE("loci of spaces")
{
    GenerationLocus l3 = locus_from_space(all_ones(3));
    CHECK(l3.families.size() == 4);
    CHECK(l3.isolated.empty());
    CHECK(l3.limit_point);
    auto pts = locus_points(l3, 1);
    CHECK(pts.size() == 4); // corners (0,0) .. (0,3)

    GenerationLocus top_only = locus_from_space(euclidean(3));
    REQUIRE(top_only.families.size() == 1);
    CHECK(top_only.families[0].i == 3);

    SpaceInput punctured = euclidean(2);
    punctured.orbits.push_back({{0}, true});
    GenerationLocus lp = locus_from_space(punctured);
    REQUIRE(lp.isolated.size() == 1);
    CHECK(lp.isolated[0].x == 1);
    CHECK(lp.isolated[0].y == 0);
    CHECK(lp.isolated[0].label == "orbit[0]");
}

TEST_CASE("taxi-cab extrema")
{
    auto e3 = taxicab_extrema(locus_from_space(all_ones(3)));
    REQUIRE(e3.size() == 2);
    CHECK(e3[0].norm == 3);
    REQUIRE(e3[0].points.size() == 1);
    CHECK(e3[0].points[0].label == "main(1,3)");

    auto e1 = taxicab_extrema(locus_from_space(all_ones(1)));
    REQUIRE(!e1.empty());
    CHECK(e1[0].norm == 1);
    CHECK(e1[0].infinite);
    CHECK(e1[0].attained);

    auto e2 = taxicab_extrema(locus_from_space(all_ones(2)));
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].norm == 2);
    CHECK(e2[1].norm == Rational(3, 2));
    CHECK(e2[1].points[0].x == Rational(1, 2));
    CHECK(e2[1].points[0].y == 1);
}

TEST_CASE("primary steps")
{
    StabilityStep s3 = classify_step(locus_from_space(all_ones(3)));
    CHECK(s3.classification == "absolute");
    CHECK(pt(s3) == "(0/1,3/1)");
    CHECK(*s3.epsilon == 1);
    CHECK(s3.bound(2) == 2);

    StabilityStep s2 = classify_step(locus_from_space(all_ones(2)));
    CHECK(s2.classification == "absolute");
    CHECK(*s2.epsilon == Rational(1, 2));
    CHECK(s2.bound(3) == 6);
    CHECK(s2.bound(1, 1) == 6); // (m |v| + j) / eps

    StabilityStep s1 = classify_step(locus_from_space(all_ones(1)));
    CHECK(s1.classification == "bounded");
    CHECK(pt(s1) == "(0/1,1/1)");
    CHECK(s1.slope > -1);
    CHECK_FALSE(s1.epsilon.has_value());
    CHECK_THROWS_AS(s1.bound(1), Error);
}

TEST_CASE("iterated reports")
{
    auto steps = [](int d, int k) { return iterate_report(all_ones(d), Variant::Left, k).steps; };

    auto d3 = steps(3, 2);
    CHECK(d3[0].classification == "absolute");
    CHECK(d3[0].bound(1) == 1);
    CHECK(d3[1].classification == "bounded");
    CHECK(pt(d3[1]) == "(0/1,2/1)");

    auto d4 = steps(4, 2);
    CHECK(pt(d4[0]) == "(0/1,4/1)");
    CHECK(*d4[0].epsilon == 1);
    CHECK(pt(d4[1]) == "(0/1,3/1)");
    CHECK(d4[1].classification == "absolute");
    CHECK(*d4[1].epsilon == Rational(1, 2));
    CHECK(d4[1].bound(1) == 2);

    auto d5 = steps(5, 3);
    CHECK(pt(d5[0]) == "(0/1,5/1)");
    CHECK(*d5[0].epsilon == 1);
    CHECK(pt(d5[1]) == "(0/1,4/1)");
    CHECK(d5[1].classification == "absolute");
    CHECK(*d5[1].epsilon == 1);
    CHECK(pt(d5[2]) == "(0/1,3/1)");
    CHECK(d5[2].classification == "bounded");

    // corners (0,d), (0,d-1), ... while k < d/2 - 1
    for (int d = 4; d <= 8; ++d) {
        auto s = steps(d, d / 2);
        for (int k = 0; k + 1 < d / 2; ++k)
            CHECK(pt(s[k]) == "(0/1," + std::to_string(d - k) + "/1)");
    }
}

TEST_CASE("rightmost and bottom variants")
{
    auto r3 = iterate_report(all_ones(3), Variant::Right, 2).steps;
    CHECK(r3[0].classification == "absolute");
    CHECK(r3[1].classification == "truncated");
    CHECK(pt(r3[1]) == "(1/2,3/2)");
    CHECK(r3[1].slope < -1);

    try {
        iterate_report(all_ones(1), Variant::Right, 1);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "no_rightmost_point");
    }

    for (int d = 1; d <= 5; ++d) {
        auto b = iterate_report(all_ones(d), Variant::Bottom, 1).steps;
        CHECK(pt(b[0]) == "(0/1,0/1)");
        CHECK(b[0].from_below);
    }
    auto b3 = iterate_report(all_ones(3), Variant::Bottom, 3).steps;
    CHECK(b3[0].classification == "absolute");
    CHECK(*b3[0].epsilon == Rational(1, 2));
    CHECK(pt(b3[1]) == "(0/1,1/1)");
    CHECK(b3[1].classification == "bounded");
    CHECK(b3[1].slope < -1);
    CHECK(pt(b3[2]) == "(0/1,2/1)");

    try {
        iterate_report(all_ones(1), Variant::Bottom, 3);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "locus_exhausted");
    }
    CHECK_THROWS_AS(iterate_report(all_ones(2), Variant::Left, 0), Error);
    CHECK_THROWS_AS(parse_variant("middle"), Error);
    CHECK(parse_variant(to_string(Variant::Bottom)) == Variant::Bottom);
}

TEST_CASE("tie-breaking is deterministic")
{
    for (auto v : {Variant::Left, Variant::Right, Variant::Bottom}) {
        SpaceInput s = all_ones(4);
        auto a = iterate_report(s, v, 3).steps;
        auto b = iterate_report(s, v, 3).steps;
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].point.label == b[k].point.label);
            CHECK(a[k].slope == b[k].slope);
        }
    }
}

TEST_CASE("separating lines")
{
    for (int d = 1; d <= 5; ++d)
        for (auto v : {Variant::Left, Variant::Right, Variant::Bottom}) {
            GenerationLocus locus = locus_from_space(all_ones(d));
            for (int k = 0; k < 3; ++k) {
                StabilityStep s;
                try {
                    s = classify_step(locus, v);
                } catch (const Error&) {
                    break;
                }
                const Rational side = s.from_below ? 1 : -1;
                for (const auto& p : others(locus, s.point, 300)) {
                    const Rational line = s.point.y + s.slope * (p.x - s.point.x);
                    CHECK(side * (p.y - line) > 0);
                    if (s.classification == "absolute" && s.epsilon) {
                        if (s.from_below)
                            CHECK(p.norm() - s.norm() >= *s.epsilon);
                        else
                            CHECK(s.norm() - p.norm() >= *s.epsilon);
                    }
                }
                // the limit point
                if (!(s.point.x == 1 && s.point.y == 0))
                    CHECK(side * (0 - (s.point.y + s.slope * (1 - s.point.x))) > 0);
                remove_point(locus, s.point);
            }
        }
}

TEST_CASE("dividing out factors keeps dimensions nonnegative")
{
    std::mt19937 rng(8);
    std::vector<SpaceInput> spaces = {euclidean(2), euclidean(3), all_ones(2)};
    SpaceInput toric;
    toric.betti = {0, 1, 1};
    toric.group = cyclic_group(2);
    toric.orbits = {{{0, 1}, true}, {{0, 1}, false}};
    spaces.push_back(toric);
    for (const auto& s : spaces) {
        auto labels = all_factor_labels(s, 6);
        for (int t = 0; t < 10; ++t) {
            std::vector<std::string> subset;
            for (const auto& l : labels)
                if (rng() % 2)
                    subset.push_back(l);
            WeightedSeries q = divide_factors(s, subset, 6);
            for (int n = 0; n <= 6; ++n)
                for (const auto& [key, v] : q.unweighted_row(n))
                    CHECK(v >= 0);
        }
        CHECK(divide_factors(s, labels, 6) == WeightedSeries::one(6, s.group.order));
    }
}

TEST_CASE("generator bounds by series division")
{
    SpaceInput r3 = euclidean(3);
    StabilityReport rep3 = iterate_report(r3, Variant::Left, 1);
    GeneratorBoundCheck c3 = verify_generator_bound(r3, rep3, 0, 2, 0, 8);
    CHECK(c3.applicable);
    CHECK(c3.bound == 2);
    CHECK(c3.ok);
    CHECK(c3.quotient_nonnegative);

    SpaceInput r2 = euclidean(2);
    StabilityReport rep2 = iterate_report(r2, Variant::Left, 1);
    GeneratorBoundCheck c2 = verify_generator_bound(r2, rep2, 0, 1, 0, 8);
    CHECK(c2.bound == 2);
    CHECK(c2.ok);

    // the diagonal p + q = 2k - 1 of the quotient, checked by hand
    WeightedSeries q = divide_factors(r2, {"main(1,2)"}, 8);
    for (int k = 3; k <= 8; ++k)
        for (const auto& [key, v] : q.unweighted_row(k))
            if (key.first + key.second == 2 * k - 1)
                CHECK(v == 0);
    // and it is not empty at k = 2: the class of Conf^2(R^2) in degree 3
    CHECK(q.unweighted(2, 1, 2) == 1);

    // a step without epsilon carries no bound
    SpaceInput r1 = all_ones(1);
    StabilityReport rep1 = iterate_report(r1, Variant::Left, 1);
    CHECK_FALSE(verify_generator_bound(r1, rep1, 0, 1, 0, 6).applicable);
}
