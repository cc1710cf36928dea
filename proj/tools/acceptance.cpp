// Acceptance checks: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include "ocs/configuration.hpp"
#include "ocs/dowling.hpp"
#include "ocs/errors.hpp"
#include "ocs/homology.hpp"
#include "ocs/io.hpp"
#include "ocs/stability.hpp"
#include "ocs/symmetric.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace ocs;

namespace {

const std::string specs = OCS_SPEC_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass)
            detail = why;
        pass = false;
    }
    void expect(bool cond, const std::string& why)
    {
        if (!cond)
            fail(why);
    }
};

using Poly = std::vector<Integer>;

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// prod over the given linear factors (1 + c z^step)
Poly product(const std::vector<Integer>& cs, int step)
{
    Poly p{1};
    for (const auto& c : cs) {
        Poly f(step + 1, 0);
        f[0] = 1;
        f[step] = c;
        p = poly_mul(p, f);
    }
    return p;
}

Integer coeff(const Poly& p, int k)
{
    return k >= 0 && k < static_cast<int>(p.size()) ? p[k] : Integer(0);
}

SpaceInput load_space(const std::string& name)
{
    return space_from_json(read_json_file(specs + "/" + name + ".json"));
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

SpaceInput all_ones(int d)
{
    SpaceInput s;
    s.name = "b=1";
    s.betti.assign(d + 1, 1);
    s.i_acyclic = true;
    return s;
}

// Signless Whitney numbers sum_{rk x = r} |mu(0, x)| from the Mobius recursion.
Poly mobius_whitney(const Poset& p)
{
    const auto& mu = p.mobius_row(*p.bottom());
    Poly w;
    for (int x = 0; x < p.size(); ++x) {
        int r = p.rank(x);
        if (static_cast<int>(w.size()) <= r)
            w.resize(r + 1, 0);
        w[r] += mu[x] < 0 ? -mu[x] : mu[x];
    }
    return w;
}

// Every G-set with |G| <= max_group (cyclic), |S| <= 2 and invariant T.
std::vector<GSetSpec> small_gsets(int max_group)
{
    std::vector<GSetSpec> out;
    for (int k = 1; k <= max_group; ++k) {
        GroupTable g = cyclic_group(k);
        for (int size = 0; size <= 2; ++size) {
            std::vector<std::vector<std::vector<int>>> actions{{}};
            if (size == 2 && k == 2)
                actions.push_back({{0, 1}, {1, 0}});
            for (const auto& a : actions)
                for (int mask = 0; mask < (1 << size); ++mask) {
                    std::vector<int> t;
                    for (int s = 0; s < size; ++s)
                        if (mask >> s & 1)
                            t.push_back(s);
                    try {
                        out.push_back(make_gset(g, size, a, t));
                    } catch (const Error&) {
                    }
                }
        }
    }
    return out;
}

std::string describe(const GSetSpec& gs, int n)
{
    std::ostringstream os;
    os << "|G|=" << gs.group.order << " |S|=" << gs.size << " |T|=" << gs.t_subset.size()
       << (gs.action.empty() ? "" : " free") << " n=" << n;
    return os.str();
}

Outcome euler_closed_form()
{
    Outcome o;
    std::vector<std::pair<SpaceInput, int>> cases; // space, |G|
    for (int d = 1; d <= 3; ++d)
        cases.emplace_back(euclidean(d), 1);
    cases.emplace_back(load_space("rp2free"), 2);
    for (const auto& [space, w] : cases) {
        EulerSeries e = euler_series(space, 8);
        const std::int64_t chi = euler_characteristic(space);
        Integer expected = 1;
        for (int n = 0; n <= 8; ++n) {
            o.expect(e.chi.at(n) == expected, space.name + " n=" + std::to_string(n));
            expected *= Integer(chi - std::int64_t(n) * w);
        }
        o.expect(e.closed_form_applies && e.matches, space.name + " closed form flag");
    }
    o.detail = o.pass ? "R^1..R^3 and Z2 on C^x, n <= 8" : o.detail;
    return o;
}

Outcome type_a_betti()
{
    Outcome o;
    for (int d : {2, 3})
        for (int n = 1; n <= 6; ++n) {
            std::vector<Integer> cs;
            for (int i = 1; i < n; ++i)
                cs.push_back(i);
            Poly closed = product(cs, 1);
            Poly whitney = mobius_whitney(build_poset(partition_lattice_spec(n)).poset);
            o.expect(closed == whitney, "Whitney oracle n=" + std::to_string(n));
            BettiTable b = bm_betti(euclidean(d), n);
            // class of collision rank k sits in BM degree dn - (d-1)k
            std::int64_t total = 0;
            for (int k = 0; k < n; ++k) {
                o.expect(Integer(b[d * n - (d - 1) * k]) == whitney[k],
                         "R^" + std::to_string(d) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
                total += b[d * n - (d - 1) * k];
            }
            o.expect(total == b.total(), "stray degrees for R^" + std::to_string(d));
        }
    o.detail = o.pass ? "R^2 and R^3, n <= 6" : o.detail;
    return o;
}

Outcome line_cells()
{
    Outcome o;
    for (int n = 0; n <= 7; ++n) {
        BettiTable b = bm_betti(euclidean(1), n);
        o.expect(Integer(b[n]) == factorial(n), "degree n, n=" + std::to_string(n));
        o.expect(Integer(b.total()) == factorial(n), "other degrees, n=" + std::to_string(n));
    }
    o.detail = o.pass ? "n <= 7" : o.detail;
    return o;
}

Outcome dowling_counts()
{
    Outcome o;
    int checked = 0, skipped = 0;
    for (const auto& gs : small_gsets(3))
        for (int n = 0; n <= 5; ++n) {
            DowlingSpec spec{gs, n};
            Integer species = count_elements_species(spec);
            if (species > 200000) {
                ++skipped;
                continue;
            }
            DowlingPoset dp = build_poset(spec);
            o.expect(Integer(dp.poset.size()) == species, describe(gs, n));
            ++checked;
        }
    if (o.pass)
        o.detail = std::to_string(checked) + " specs, " + std::to_string(skipped) + " over the cap";
    return o;
}

Outcome interval_factorization()
{
    Outcome o;
    long intervals = 0;
    for (const auto& gs : small_gsets(2))
        for (int n = 0; n <= 4; ++n) {
            DowlingSpec spec{gs, n};
            DowlingPoset dp = build_poset(spec);
            for (int x = 0; x < dp.poset.size(); ++x) {
                Poset lower = lower_interval(dp.poset, x);
                Poset prod = factor_product(factor_interval(spec, dp.elements[x]));
                o.expect(is_isomorphic(lower, prod).has_value(),
                         describe(gs, n) + " element " + to_string(dp.elements[x]));
                ++intervals;
            }
        }
    if (o.pass)
        o.detail = std::to_string(intervals) + " intervals";
    return o;
}

Outcome whitney_factorization()
{
    Outcome o;
    for (std::string type : {"B", "C", "D"})
        for (int n = 0; n <= 4; ++n) {
            DowlingSpec spec = dowling_spec_from_json(read_json_file(specs + "/toric" + type + "-poset.json"), n);
            FactorizationReport r = whitney_factorization_check(spec);
            o.expect(r.ok, "type " + type + " n=" + std::to_string(n) +
                               (r.mismatches.empty() ? "" : ": " + r.mismatches.front()));
            o.expect(r.whitney.dims == r.predicted, "type " + type + " dims");
        }
    o.detail = o.pass ? "toric B/C/D, n <= 4" : o.detail;
    return o;
}

Outcome type_b_poincare()
{
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
        std::vector<Integer> cs;
        for (int i = 1; i <= n; ++i)
            cs.push_back(2 * i - 1);
        Poly closed = product(cs, 1);
        DowlingPoset dp = build_poset(dowling_lattice_spec(cyclic_group(2), n));
        o.expect(mobius_whitney(dp.poset) == closed, "Mobius n=" + std::to_string(n));
        WhitneyHomology w = whitney_homology(dp.poset);
        for (int r = 0; r <= n; ++r)
            o.expect(Integer(w(r, r)) == coeff(closed, r), "homology n=" + std::to_string(n));
    }
    o.detail = o.pass ? "D_n(Z2), n <= 4" : o.detail;
    return o;
}

Outcome philip_hall()
{
    Outcome o;
    int posets = 0;
    auto check = [&](const Poset& p, const std::string& what) {
        WhitneyHomology w = whitney_homology(p);
        o.expect(w.philip_hall, what + ": Philip Hall");
        o.expect(w.concentrated, what + ": concentration");
        for (auto [r, total] : w.mobius_whitney)
            o.expect(w(r, r) == total, what + ": rank |mu| at rank " + std::to_string(r));
        if (auto top = p.top()) {
            BettiTable h = interval_homology(p);
            o.expect(h.euler_characteristic() == mobius(p, *p.bottom(), *top), what + ": full interval");
        }
        ++posets;
    };
    for (int n = 0; n <= 5; ++n)
        check(build_poset(partition_lattice_spec(n)).poset, "Q_" + std::to_string(n));
    for (const auto& gs : small_gsets(3))
        for (int n = 0; n <= 4; ++n)
            check(build_poset({gs, n}).poset, describe(gs, n));
    for (std::string f : {"typeC", "partition", "toricB-poset", "toricC-poset", "toricD-poset"})
        for (int n = 0; n <= 4; ++n)
            check(build_poset(dowling_spec_from_json(read_json_file(specs + "/" + f + ".json"), n)).poset, f);
    if (o.pass)
        o.detail = std::to_string(posets) + " posets";
    return o;
}

Outcome stability_table()
{
    Outcome o;
    auto steps = [](int d, int k) { return iterate_report(all_ones(d), Variant::Left, k).steps; };
    auto bound_is = [&](const StabilityStep& s, int factor, const std::string& what) {
        o.expect(s.classification == "absolute", what + " classification " + s.classification);
        for (int j = 0; j <= 3; ++j)
            o.expect(s.epsilon && s.bound(j) == Rational(factor * j), what + " bound");
    };

    auto d1 = steps(1, 1);
    o.expect(d1[0].classification == "bounded", "d=1 " + d1[0].classification);
    auto d2 = steps(2, 1);
    bound_is(d2[0], 2, "d=2 primary");
    auto d3 = steps(3, 2);
    bound_is(d3[0], 1, "d=3 primary");
    o.expect(d3[1].classification == "bounded", "d=3 secondary " + d3[1].classification);
    auto d4 = steps(4, 2);
    bound_is(d4[1], 2, "d=4 secondary");
    auto d5 = steps(5, 3);
    bound_is(d5[1], 1, "d=5 secondary");
    o.expect(d5[2].classification == "bounded", "d=5 tertiary " + d5[2].classification);
    o.detail = o.pass ? "d = 1..5" : o.detail;
    return o;
}

Outcome generator_bounds()
{
    Outcome o;
    for (int d : {2, 3}) {
        SpaceInput space = euclidean(d);
        StabilityReport report = iterate_report(space, Variant::Left, 1);
        for (int j = 0; j <= 3; ++j) {
            GeneratorBoundCheck c = verify_generator_bound(space, report, 0, j, 0, 8);
            o.expect(c.applicable && c.ok, "R^" + std::to_string(d) + " j=" + std::to_string(j) +
                                               (c.witnesses.empty() ? "" : ": " + c.witnesses.front()));
        }
        WeightedSeries q = divide_factors(space, all_factor_labels(space, 8), 8);
        o.expect(q == WeightedSeries::one(8, 1), "R^" + std::to_string(d) + " full quotient is not 1");
    }
    o.detail = o.pass ? "R^2 and R^3, j <= 3, n <= 8" : o.detail;
    return o;
}

Outcome multiplicity_stability()
{
    Outcome o;
    std::map<int, ClassFunction> seq;
    for (int n = 4; n <= 6; ++n)
        seq[n] = whitney_character(build_poset(partition_lattice_spec(n)), 1);
    StableMultiplicityReport r = stable_multiplicity_check(seq);
    const std::map<Partition, Integer> expected{{{}, 1}, {{1}, 1}, {{2}, 1}};
    o.expect(r.stable, "not stable");
    for (int n = 4; n <= 6; ++n)
        o.expect(r.names.at(n) == expected, "names at n=" + std::to_string(n));
    o.detail = o.pass ? "{(), (1), (2)} at n = 4, 5, 6" : o.detail;
    return o;
}

Outcome negative_controls()
{
    Outcome o;
    auto singleton_punctures = [](const std::string& file, int n) {
        DowlingSpec spec = dowling_spec_from_json(read_json_file(specs + "/" + file), n);
        std::vector<int> orbit = orbit_index(spec.gset);
        int found = 0;
        for (const auto& e : build_poset(spec).elements) {
            std::map<int, int> per_orbit;
            for (auto [i, s] : e.zero_coloring())
                ++per_orbit[orbit[s]];
            for (auto [orb, count] : per_orbit)
                found += count == 1;
        }
        return found;
    };
    for (int n = 1; n <= 4; ++n) {
        o.expect(singleton_punctures("toricD-poset.json", n) == 0, "type D has a singleton puncture");
        o.expect(singleton_punctures("toricC-poset.json", n) > 0, "type C control has none");
    }
    OrbitHomology excluded = orbit_homology(cyclic_group(2), false, 3);
    OrbitHomology included = orbit_homology(cyclic_group(2), true, 3);
    o.expect(excluded.h.at(1) == 0 && included.h.at(1) != 0, "degree-1 orbit factor");

    SpaceInput bad = euclidean(2);
    bad.i_acyclic = false;
    try {
        bm_betti(bad, 2);
        o.fail("bm_betti accepted a non-i-acyclic space");
    } catch (const Error& e) {
        o.expect(e.code() == "not_i_acyclic", "wrong refusal " + e.code());
    }
    o.detail = o.pass ? "T-restriction and i-acyclic refusal" : o.detail;
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Euler closed form", euler_closed_form},
        {"type A Betti numbers", type_a_betti},
        {"Conf^n(R) cell count", line_cells},
        {"Dowling enumeration vs species", dowling_counts},
        {"interval factorization", interval_factorization},
        {"Whitney factorization", whitney_factorization},
        {"type B Poincare polynomial", type_b_poincare},
        {"Philip Hall and concentration", philip_hall},
        {"stability table", stability_table},
        {"generator bounds", generator_bounds},
        {"multiplicity stability", multiplicity_stability},
        {"negative controls", negative_controls},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
