#include "ocs/configuration.hpp"
#include "ocs/dowling.hpp"
#include "ocs/errors.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace ocs {

void validate_space(const SpaceInput& space)
{
    require(!space.betti.empty(), "invalid_space", "betti list is empty");
    for (auto b : space.betti)
        require(b >= 0, "invalid_space", "negative Betti number");
    require(space.betti.back() > 0, "invalid_space", "top Betti number b_d must be positive");
    validate_group(space.group);
    for (const auto& o : space.orbits)
        require(is_subgroup(space.group, o.stabilizer), "invalid_subgroup", "orbit stabilizer is not a subgroup");
}

GSetSpec orbit_gset(const SpaceInput& space)
{
    const auto& g = space.group;
    // points are cosets a G_s, numbered orbit by orbit
    std::vector<std::vector<int>> coset_of; // per orbit: element -> local coset index
    std::vector<int> offset;
    int size = 0;
    for (const auto& o : space.orbits) {
        std::vector<int> local(g.order, -1);
        int count = 0;
        for (int a = 0; a < g.order; ++a) {
            if (local[a] >= 0)
                continue;
            for (int h : o.stabilizer)
                local[g.mul[a][h]] = count;
            ++count;
        }
        offset.push_back(size);
        size += count;
        coset_of.push_back(std::move(local));
    }
    std::vector<std::vector<int>> action(g.order, std::vector<int>(size));
    std::vector<int> t;
    for (std::size_t o = 0; o < space.orbits.size(); ++o) {
        // representative of each coset
        std::vector<int> rep;
        for (int a = 0; a < g.order; ++a)
            if (static_cast<int>(rep.size()) == coset_of[o][a])
                rep.push_back(a);
        for (int a = 0; a < g.order; ++a)
            for (std::size_t c = 0; c < rep.size(); ++c)
                action[a][offset[o] + c] = offset[o] + coset_of[o][g.mul[a][rep[c]]];
        if (space.orbits[o].in_t)
            for (std::size_t c = 0; c < rep.size(); ++c)
                t.push_back(offset[o] + static_cast<int>(c));
    }
    return make_gset(g, size, std::move(action), std::move(t));
}

DowlingSpec dowling_spec_for(const SpaceInput& space, int n)
{
    return DowlingSpec{orbit_gset(space), n};
}

namespace {

using OrbitKey = std::tuple<std::vector<std::vector<int>>, bool, std::size_t>;

struct OrbitCache {
    std::mutex mutex;
    std::map<OrbitKey, OrbitHomology> entries;
};

OrbitCache& orbit_cache()
{
    static OrbitCache cache;
    return cache;
}

} // namespace

OrbitHomology orbit_homology(const GroupTable& stabilizer, bool in_t, int kmax, std::size_t direct_cap)
{
    require(kmax >= 0, "invalid_argument", "negative degree");
    OrbitKey key{stabilizer.mul, in_t, direct_cap};
    {
        auto& cache = orbit_cache();
        std::lock_guard<std::mutex> lock(cache.mutex);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end() && static_cast<int>(it->second.h.size()) > kmax) {
            OrbitHomology out = it->second;
            out.h.resize(kmax + 1);
            out.direct.resize(kmax + 1);
            return out;
        }
    }

    const int w = stabilizer.order;
    OrbitHomology out;
    out.h.assign(kmax + 1, 0);
    out.direct.assign(kmax + 1, false);
    out.h[0] = 1;
    out.direct[0] = true;

    // mu of the partition lattice Q_m is (-1)^{m-1} (m-1)!; B(t) carries the
    // blocks with their H-colourings, Z(t) the zero block.
    WeightedSeries blocks_arg(kmax, w);
    for (int m = 1; m <= kmax; ++m) {
        Rational mu = Rational(factorial(m - 1)) * ((m % 2 == 1) ? 1 : -1);
        blocks_arg.add_term(m, 0, 0, mu / (Rational(w) * Rational(factorial(m))));
    }
    WeightedSeries B = series_exp(blocks_arg);
    std::vector<Rational> mu_zero(kmax + 1, 0); // mu_D(j) / (w^j j!)
    mu_zero[0] = 1;

    for (int k = 1; k <= kmax; ++k) {
        GSetSpec gs = make_gset(stabilizer, 1, {}, in_t ? std::vector<int>{0} : std::vector<int>{});
        DowlingSpec spec{gs, k};
        const Rational scale = Rational(boost::multiprecision::pow(Integer(w), k) * factorial(k));
        if (k == 1 && !in_t) {
            out.h[1] = 0; // the only element is the bottom
            out.direct[1] = true;
            mu_zero[1] = 0;
            continue;
        }
        if (count_elements_species(spec) <= direct_cap) {
            DowlingPoset dp = build_poset(spec);
            BettiTable bt = interval_homology(dp.poset);
            if (!bt.concentrated_in(k - 2))
                out.concentrated = false;
            out.h[k] = bt[k - 2];
            out.direct[k] = true;
            mu_zero[k] = Rational(bt.euler_characteristic()) / scale;
        } else {
            Rational rest = 0;
            for (int j = 0; j < k; ++j)
                rest += mu_zero[j] * B.coeff(k - j, 0, 0);
            mu_zero[k] = -rest;
            Rational mu = mu_zero[k] * scale;
            Rational h = (k % 2 == 0) ? mu : Rational(-mu);
            out.h[k] = to_int64(h);
            out.direct[k] = false;
        }
    }

    auto& cache = orbit_cache();
    std::lock_guard<std::mutex> lock(cache.mutex);
    cache.entries[key] = out;
    return out;
}

WeightedSeries main_component_argument(int n, int i, const SpaceInput& space, int N)
{
    require(n >= 1, "invalid_argument", "main factor index must be positive");
    WeightedSeries arg(N, space.group.order);
    if (i >= 0 && i <= space.d() && space.betti[i] != 0)
        arg.add_term(n, n - 1, i, Rational(space.betti[i]) / Rational(space.group.order * n));
    return arg;
}

WeightedSeries main_factor_argument(int n, const SpaceInput& space, int N)
{
    require(n >= 1, "invalid_argument", "main factor index must be positive");
    WeightedSeries arg(N, space.group.order);
    for (int q = 0; q <= space.d(); ++q)
        arg = series_add(arg, main_component_argument(n, q, space, N));
    return arg;
}

WeightedSeries main_factor(int n, const SpaceInput& space, int N)
{
    return series_exp(main_factor_argument(n, space, N));
}

WeightedSeries orbit_factor(const SpaceInput& space, std::size_t orbit, int N)
{
    require(orbit < space.orbits.size(), "invalid_argument", "orbit index out of range");
    const auto& o = space.orbits[orbit];
    GroupTable gs = extract_subgroup(space.group, o.stabilizer);
    OrbitHomology oh = orbit_homology(gs, o.in_t, N);
    WeightedSeries f(N, space.group.order);
    for (int k = 0; k <= N; ++k)
        f.add_term(k, k, 0,
                   Rational(oh.h[k]) / Rational(boost::multiprecision::pow(Integer(gs.order), k) * factorial(k)));
    return f;
}

WeightedSeries e1_series(const SpaceInput& space, int N)
{
    validate_space(space);
    require(N >= 0 && N <= kMaxTruncation, "cap_exceeded",
            "truncation must lie in [0, " + std::to_string(kMaxTruncation) + "]");
    WeightedSeries arg(N, space.group.order);
    for (int n = 1; n <= N; ++n)
        arg = series_add(arg, main_factor_argument(n, space, N));
    WeightedSeries total = series_exp(arg);
    for (std::size_t o = 0; o < space.orbits.size(); ++o)
        total = series_mul(total, orbit_factor(space, o, N));
    return total;
}

Integer E1Table::dim(int n, int p, int q) const
{
    if (n < 0 || n > truncation)
        return 0;
    auto it = rows[n].find({p, q});
    return it == rows[n].end() ? Integer(0) : it->second;
}

E1Table e1_table(const SpaceInput& space, int N)
{
    WeightedSeries s = e1_series(space, N);
    E1Table t;
    t.truncation = N;
    for (int n = 0; n <= N; ++n) {
        auto row = s.unweighted_row(n);
        for (const auto& [k, v] : row)
            require(v >= 0, "negative_dimension", "negative E1 dimension at t^" + std::to_string(n));
        t.rows.push_back(std::move(row));
    }
    return t;
}

BettiTable bm_betti(const SpaceInput& space, int n)
{
    require(space.i_acyclic, "not_i_acyclic",
            "Borel-Moore Betti numbers are only read off the E1 page for i-acyclic spaces; use the E1 table");
    require(n >= 0, "invalid_argument", "negative configuration size");
    E1Table t = e1_table(space, n);
    BettiTable bt;
    for (const auto& [k, v] : t.rows[n])
        if (v != 0)
            bt.ranks[k.first + k.second] += to_int64(v);
    return bt;
}

std::int64_t euler_characteristic(const SpaceInput& space)
{
    std::int64_t chi = 0;
    for (int q = 0; q <= space.d(); ++q)
        chi += (q % 2 == 0) ? space.betti[q] : -space.betti[q];
    return chi;
}

EulerSeries euler_series(const SpaceInput& space, int N)
{
    E1Table t = e1_table(space, N);
    EulerSeries es;
    for (int n = 0; n <= N; ++n) {
        Integer chi = 0;
        for (const auto& [k, v] : t.rows[n])
            chi += ((k.first + k.second) % 2 == 0) ? v : Integer(-v);
        es.chi.push_back(chi);
    }
    es.closed_form_applies = space.orbits.empty();
    if (es.closed_form_applies) {
        const Integer chi_x = euler_characteristic(space);
        const int w = space.group.order;
        for (int n = 0; n <= N; ++n) {
            Integer prod = 1;
            for (int i = 0; i < n; ++i)
                prod *= chi_x - Integer(i) * w;
            es.closed_form.push_back(prod);
        }
        es.matches = es.closed_form == es.chi;
    }
    return es;
}

} // namespace ocs
