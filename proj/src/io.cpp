#include "ocs/io.hpp"
#include "ocs/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace ocs {

namespace {

[[noreturn]] void malformed(const std::string& msg)
{
    throw Error("malformed_input", msg);
}

void check_object(const json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object())
        malformed(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }) == allowed.end())
            malformed(where + ": unknown field \"" + it.key() + "\"");
}

const json& field(const json& j, const char* key, const std::string& where)
{
    auto it = j.find(key);
    if (it == j.end())
        malformed(where + ": missing field \"" + key + "\"");
    return *it;
}

int as_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        malformed(where + ": expected an integer");
    return j.get<int>();
}

std::int64_t as_int64(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        malformed(where + ": expected an integer");
    return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& where)
{
    if (!j.is_boolean())
        malformed(where + ": expected a boolean");
    return j.get<bool>();
}

std::vector<int> int_list(const json& j, const std::string& where)
{
    if (!j.is_array())
        malformed(where + ": expected an array");
    std::vector<int> out;
    for (const auto& x : j)
        out.push_back(as_int(x, where));
    return out;
}

std::vector<std::vector<int>> int_matrix(const json& j, const std::string& where)
{
    if (!j.is_array())
        malformed(where + ": expected an array of arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : j)
        out.push_back(int_list(row, where));
    return out;
}

} // namespace

GroupTable group_from_json(const json& j)
{
    const std::string where = "group";
    if (!j.is_object())
        malformed(where + ": expected an object");
    const std::string kind = field(j, "kind", where).is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "cyclic") {
        check_object(j, {"kind", "order"}, where);
        const int k = as_int(field(j, "order", where), where + ".order");
        if (k < 1)
            malformed(where + ".order: must be positive");
        return cyclic_group(k);
    }
    if (kind == "table") {
        check_object(j, {"kind", "mul"}, where);
        return group_from_table(int_matrix(field(j, "mul", where), where + ".mul"));
    }
    malformed(where + ".kind: expected \"cyclic\" or \"table\"");
}

json group_to_json(const GroupTable& g)
{
    return {{"kind", "table"}, {"mul", g.mul}};
}

GSetSpec gset_from_json(const json& j, const GroupTable& group)
{
    const std::string where = "gset";
    check_object(j, {"size", "action", "T"}, where);
    const int size = as_int(field(j, "size", where), where + ".size");
    if (size < 0)
        malformed(where + ".size: must be nonnegative");
    std::vector<std::vector<int>> action;
    if (j.contains("action"))
        action = int_matrix(j["action"], where + ".action");
    std::vector<int> t;
    if (j.contains("T"))
        t = int_list(j["T"], where + ".T");
    return make_gset(group, size, std::move(action), std::move(t));
}

json gset_to_json(const GSetSpec& gset)
{
    return {{"size", gset.size}, {"action", gset.action}, {"T", gset.t_subset}};
}

DowlingSpec dowling_spec_from_json(const json& j, int n)
{
    check_object(j, {"group", "gset"}, "dowling spec");
    require(n >= 0, "invalid_argument", "n must be nonnegative");
    DowlingSpec spec;
    GroupTable g = group_from_json(field(j, "group", "dowling spec"));
    if (j.contains("gset"))
        spec.gset = gset_from_json(j["gset"], g);
    else
        spec.gset = make_gset(g, 0, {}, {});
    spec.n = n;
    return spec;
}

json dowling_spec_to_json(const DowlingSpec& spec)
{
    return {{"group", group_to_json(spec.group())}, {"gset", gset_to_json(spec.gset)}};
}

SpaceInput space_from_json(const json& j)
{
    const std::string where = "space";
    check_object(j, {"name", "betti", "group", "orbits", "gset", "iAcyclic"}, where);
    SpaceInput s;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            malformed(where + ".name: expected a string");
        s.name = j["name"].get<std::string>();
    }
    const json& betti = field(j, "betti", where);
    if (!betti.is_array())
        malformed(where + ".betti: expected an array");
    for (const auto& b : betti)
        s.betti.push_back(as_int64(b, where + ".betti"));
    s.group = j.contains("group") ? group_from_json(j["group"]) : cyclic_group(1);
    if (j.contains("orbits") && j.contains("gset"))
        malformed(where + ": give either \"orbits\" or \"gset\", not both");
    if (j.contains("orbits")) {
        if (!j["orbits"].is_array())
            malformed(where + ".orbits: expected an array");
        for (const auto& o : j["orbits"]) {
            check_object(o, {"stabilizer", "inT"}, where + ".orbits[]");
            OrbitData od;
            const json& st = field(o, "stabilizer", where + ".orbits[]");
            check_object(st, {"elements"}, where + ".orbits[].stabilizer");
            od.stabilizer = int_list(field(st, "elements", "stabilizer"), "stabilizer.elements");
            std::sort(od.stabilizer.begin(), od.stabilizer.end());
            if (o.contains("inT"))
                od.in_t = as_bool(o["inT"], where + ".orbits[].inT");
            s.orbits.push_back(std::move(od));
        }
    }
    if (j.contains("gset")) {
        GSetSpec gs = gset_from_json(j["gset"], s.group);
        for (const auto& orb : orbits_and_stabilizers(gs))
            s.orbits.push_back({orb.stabilizer, gs.in_t(orb.representative)});
    }
    if (j.contains("iAcyclic"))
        s.i_acyclic = as_bool(j["iAcyclic"], where + ".iAcyclic");
    validate_space(s);
    return s;
}

PosetInput poset_from_json(const json& j)
{
    const std::string where = "poset";
    check_object(j, {"n", "covers", "rank", "elements", "spec", "degree"}, where);
    const int n = as_int(field(j, "n", where), where + ".n");
    if (n < 0)
        malformed(where + ".n: must be nonnegative");
    const json& cj = field(j, "covers", where);
    if (!cj.is_array())
        malformed(where + ".covers: expected an array");
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : cj) {
        auto pair = int_list(c, where + ".covers");
        if (pair.size() != 2)
            malformed(where + ".covers: each cover is a pair [a, b]");
        if (pair[0] < 0 || pair[0] >= n || pair[1] < 0 || pair[1] >= n)
            malformed(where + ".covers: index out of range");
        covers.emplace_back(pair[0], pair[1]);
    }
    std::optional<std::vector<int>> rank;
    if (j.contains("rank")) {
        rank = int_list(j["rank"], where + ".rank");
        if (static_cast<int>(rank->size()) != n)
            malformed(where + ".rank: length must equal n");
    }
    PosetInput in;
    in.poset = Poset::from_covers(n, covers, rank);
    if (j.contains("spec") != j.contains("degree"))
        malformed(where + ": \"spec\" and \"degree\" go together");
    if (j.contains("spec")) {
        const int degree = as_int(j["degree"], where + ".degree");
        DowlingPoset dp = build_poset(dowling_spec_from_json(j["spec"], degree));
        require(dp.poset.size() == n, "poset_mismatch", "covers do not match the recorded Dowling spec");
        auto a = dp.poset.covers();
        auto b = in.poset.covers();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        require(a == b, "poset_mismatch", "covers do not match the recorded Dowling spec");
        in.dowling = std::move(dp);
    }
    return in;
}

json poset_to_json(const Poset& p)
{
    json covers = json::array();
    for (auto [a, b] : p.covers())
        covers.push_back({a, b});
    json out = {{"n", p.size()}, {"covers", covers}};
    if (p.ranked())
        out["rank"] = p.rank();
    return out;
}

json dowling_poset_to_json(const DowlingPoset& dp)
{
    json out = poset_to_json(dp.poset);
    json elements = json::array();
    for (const auto& e : dp.elements)
        elements.push_back(to_string(e));
    out["elements"] = elements;
    out["spec"] = dowling_spec_to_json(dp.spec);
    out["degree"] = dp.spec.n;
    return out;
}

std::string canonical_poset_string(const Poset& p)
{
    auto covers = p.covers();
    std::sort(covers.begin(), covers.end());
    json c = json::array();
    for (auto [a, b] : covers)
        c.push_back({a, b});
    json out = {{"n", p.size()}, {"covers", c}};
    if (p.ranked())
        out["rank"] = p.rank();
    return out.dump();
}

std::string fnv1a_hex(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json rational_to_json(const Rational& r)
{
    return to_pq(r);
}

json betti_to_json(const BettiTable& b)
{
    json ranks = json::object();
    for (auto [k, v] : b.ranks)
        ranks[std::to_string(k)] = v;
    return {{"ranks", ranks}, {"euler", b.euler_characteristic()}, {"total", b.total()}};
}

json whitney_to_json(const WhitneyHomology& w)
{
    json dims = json::array();
    for (auto [key, v] : w.dims)
        dims.push_back({{"rank", key.first}, {"degree", key.second}, {"dim", v}});
    json mw = json::object();
    for (auto [r, v] : w.mobius_whitney)
        mw[std::to_string(r)] = v;
    return {{"dims", dims}, {"concentrated", w.concentrated}, {"mobiusWhitney", mw}, {"philipHall", w.philip_hall}};
}

json partition_to_json(const Partition& p)
{
    return json(p);
}

json step_to_json(const StabilityStep& s)
{
    json out = {{"point", {{"x", to_pq(s.point.x)}, {"y", to_pq(s.point.y)}}},
                {"factor", s.point.label},
                {"norm", to_pq(s.norm())},
                {"classification", s.classification},
                {"slope", to_pq(s.slope)},
                {"side", s.from_below ? "below" : "above"}};
    if (s.epsilon) {
        out["epsilon"] = to_pq(*s.epsilon);
        out["epsilonAttained"] = s.epsilon_attained;
        if (*s.epsilon > 0)
            out["boundPerJ"] = to_pq(s.bound(1, 0));
    } else {
        out["epsilon"] = s.classification == "absolute" ? json("infinite") : json(nullptr);
    }
    return out;
}

json report_to_json(const StabilityReport& r)
{
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back(step_to_json(s));
    return {{"space", r.space},
            {"variant", to_string(r.variant)},
            {"validity", r.i_acyclic ? "homology" : "E1 page only"},
            {"steps", steps}};
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("malformed_input", "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("malformed_input", path + ": " + e.what());
    }
}

} // namespace ocs
