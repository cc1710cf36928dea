#include "ocs/configuration.hpp"
#include "ocs/dowling.hpp"
#include "ocs/homology.hpp"

#include <set>
#include <string>

namespace ocs {

FactorizationReport whitney_factorization_check(const DowlingSpec& spec)
{
    FactorizationReport rep;
    DowlingPoset dp = build_poset(spec);
    rep.whitney = whitney_homology(dp.poset);

    // a point with the G-set's orbits: the main factors carry x^{n-1} t^n/(w n)
    SpaceInput pt;
    pt.name = "whitney";
    pt.betti = {1};
    pt.group = spec.group();
    for (const auto& o : orbits_and_stabilizers(spec.gset))
        pt.orbits.push_back({o.stabilizer, spec.gset.in_t(o.representative)});
    WeightedSeries s = e1_series(pt, spec.n);
    for (const auto& [k, v] : s.unweighted_row(spec.n))
        if (v != 0)
            rep.predicted[{k.first, k.first}] = to_int64(v);

    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : rep.whitney.dims)
        keys.insert(k);
    for (const auto& [k, v] : rep.predicted)
        keys.insert(k);
    for (const auto& k : keys) {
        auto a = rep.whitney(k.first, k.second);
        auto it = rep.predicted.find(k);
        auto b = it == rep.predicted.end() ? 0 : it->second;
        if (a != b) {
            rep.ok = false;
            rep.mismatches.push_back("(rank " + std::to_string(k.first) + ", degree " + std::to_string(k.second) +
                                     "): Whitney " + std::to_string(a) + " vs product " + std::to_string(b));
        }
    }
    return rep;
}

} // namespace ocs
