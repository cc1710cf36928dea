#include "ocs/dowling.hpp"
#include "ocs/errors.hpp"
#include "ocs/series.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace ocs {

DowlingSpec partition_lattice_spec(int n)
{
    return DowlingSpec{make_gset(GroupTable{}, 0, {}, {}), n};
}

DowlingSpec dowling_lattice_spec(const GroupTable& g, int n)
{
    return DowlingSpec{make_gset(g, 1, {}, {0}), n};
}

int DowlingElement::block_count() const
{
    int c = 0;
    for (int i = 0; i < size(); ++i)
        if (owner[i] == i)
            ++c;
    return c;
}

std::vector<DowlingElement::Block> DowlingElement::blocks() const
{
    std::vector<Block> out;
    std::vector<int> slot(size(), -1);
    for (int i = 0; i < size(); ++i) {
        if (owner[i] < 0)
            continue;
        if (owner[i] == i) {
            slot[i] = static_cast<int>(out.size());
            out.push_back({});
        }
        auto& b = out[slot[owner[i]]];
        b.members.push_back(i);
        b.colors.push_back(label[i]);
    }
    return out;
}

std::vector<std::pair<int, int>> DowlingElement::zero_coloring() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        if (owner[i] < 0)
            out.emplace_back(i, label[i]);
    return out;
}

std::size_t DowlingElementHash::operator()(const DowlingElement& e) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (int i = 0; i < e.size(); ++i) {
        h = (h ^ static_cast<std::size_t>(e.owner[i] + 1)) * 1099511628211ull;
        h = (h ^ static_cast<std::size_t>(e.label[i])) * 1099511628211ull;
    }
    return h;
}

DowlingElement bottom_element(const DowlingSpec& spec)
{
    DowlingElement e;
    e.owner.resize(spec.n);
    std::iota(e.owner.begin(), e.owner.end(), 0);
    e.label.assign(spec.n, spec.group().identity);
    return e;
}

namespace {

// Zero-block points per orbit must not be exactly one unless the orbit lies in T.
bool t_restriction_holds(const DowlingSpec& spec, const std::vector<int>& orbit_of,
                         const std::vector<char>& orbit_in_t, const DowlingElement& e)
{
    std::vector<int> count(orbit_in_t.size(), 0);
    for (int i = 0; i < e.size(); ++i)
        if (e.owner[i] < 0)
            ++count[orbit_of[e.label[i]]];
    for (std::size_t o = 0; o < count.size(); ++o)
        if (count[o] == 1 && !orbit_in_t[o])
            return false;
    (void)spec;
    return true;
}

struct OrbitInfo {
    std::vector<int> orbit_of;
    std::vector<char> in_t;
};

OrbitInfo orbit_info(const DowlingSpec& spec)
{
    OrbitInfo info;
    auto orbits = orbits_and_stabilizers(spec.gset);
    info.orbit_of.assign(spec.gset.size, -1);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        for (int s : orbits[o].points)
            info.orbit_of[s] = static_cast<int>(o);
        info.in_t.push_back(spec.gset.in_t(orbits[o].representative) ? 1 : 0);
    }
    return info;
}

} // namespace

bool is_valid(const DowlingSpec& spec, const DowlingElement& e)
{
    const int n = spec.n;
    if (e.size() != n || static_cast<int>(e.label.size()) != n)
        return false;
    const auto& g = spec.group();
    for (int i = 0; i < n; ++i) {
        int o = e.owner[i];
        if (o < 0) {
            if (o != -1 || e.label[i] < 0 || e.label[i] >= spec.gset.size)
                return false;
        } else {
            if (o > i || e.owner[o] != o || e.label[i] < 0 || e.label[i] >= g.order)
                return false;
            if (o == i && e.label[i] != g.identity)
                return false;
        }
    }
    auto info = orbit_info(spec);
    return t_restriction_holds(spec, info.orbit_of, info.in_t, e);
}

void validate_element(const DowlingSpec& spec, const DowlingElement& e)
{
    require(is_valid(spec, e), "invalid_element", "element is not a valid canonical Dowling element");
}

DowlingElement make_element(const DowlingSpec& spec, const std::vector<DowlingElement::Block>& blocks,
                            const std::vector<std::pair<int, int>>& zero)
{
    const auto& g = spec.group();
    DowlingElement e;
    e.owner.assign(spec.n, -2);
    e.label.assign(spec.n, 0);
    for (const auto& b : blocks) {
        require(!b.members.empty() && b.members.size() == b.colors.size(), "invalid_element", "malformed block");
        for (int c : b.colors)
            require(c >= 0 && c < g.order, "invalid_element", "colour out of range");
        auto it = std::min_element(b.members.begin(), b.members.end());
        int m = *it;
        int shift = g.inv.at(b.colors[it - b.members.begin()]);
        for (std::size_t k = 0; k < b.members.size(); ++k) {
            int x = b.members[k];
            require(x >= 0 && x < spec.n && e.owner[x] == -2, "invalid_element", "block members overlap or out of range");
            require(b.colors[k] >= 0 && b.colors[k] < g.order, "invalid_element", "colour out of range");
            e.owner[x] = m;
            e.label[x] = g.mul[b.colors[k]][shift];
        }
    }
    for (auto [x, s] : zero) {
        require(x >= 0 && x < spec.n && e.owner[x] == -2, "invalid_element", "zero block overlaps a block");
        require(s >= 0 && s < spec.gset.size, "invalid_element", "zero colour out of range");
        e.owner[x] = -1;
        e.label[x] = s;
    }
    for (int i = 0; i < spec.n; ++i)
        require(e.owner[i] != -2, "invalid_element", "element " + std::to_string(i + 1) + " is not covered");
    validate_element(spec, e);
    return e;
}

std::string to_string(const DowlingElement& e)
{
    std::ostringstream os;
    for (const auto& b : e.blocks()) {
        for (std::size_t k = 0; k < b.members.size(); ++k)
            os << (k ? "," : "") << b.colors[k] << ':' << b.members[k] + 1;
        os << '|';
    }
    os << "Z{";
    bool first = true;
    for (auto [x, s] : e.zero_coloring()) {
        os << (first ? "" : ",") << x + 1 << ':' << s;
        first = false;
    }
    os << '}';
    return os.str();
}

namespace {

std::pair<int, int> parse_pair(const std::string& tok)
{
    auto colon = tok.find(':');
    require(colon != std::string::npos && colon > 0 && colon + 1 < tok.size(), "invalid_element",
            "expected 'a:b', got '" + tok + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        int a = std::stoi(tok.substr(0, colon), &used1);
        int b = std::stoi(tok.substr(colon + 1), &used2);
        require(used1 == colon && used2 == tok.size() - colon - 1, "invalid_element", "bad number in '" + tok + "'");
        return {a, b};
    } catch (const std::logic_error&) {
        throw Error("invalid_element", "bad number in '" + tok + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

DowlingElement parse_element(const DowlingSpec& spec, const std::string& s)
{
    auto parts = split(s, '|');
    const std::string& z = parts.back();
    require(z.size() >= 3 && z.compare(0, 2, "Z{") == 0 && z.back() == '}', "invalid_element",
            "element string must end with Z{...}");
    std::vector<DowlingElement::Block> blocks;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        DowlingElement::Block b;
        for (const auto& tok : split(parts[i], ',')) {
            auto [c, x] = parse_pair(tok);
            b.colors.push_back(c);
            b.members.push_back(x - 1);
        }
        blocks.push_back(std::move(b));
    }
    std::vector<std::pair<int, int>> zero;
    std::string inner = z.substr(2, z.size() - 3);
    if (!inner.empty())
        for (const auto& tok : split(inner, ',')) {
            auto [x, pt] = parse_pair(tok);
            zero.emplace_back(x - 1, pt);
        }
    return make_element(spec, blocks, zero);
}

std::vector<DowlingElement> covers_of(const DowlingSpec& spec, const DowlingElement& e)
{
    validate_element(spec, e);
    const auto& g = spec.group();
    auto info = orbit_info(spec);
    auto blocks = e.blocks();
    std::vector<DowlingElement> out;

    // merges: the block with the larger minimum is right-translated by h
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b)
            for (int h = 0; h < g.order; ++h) {
                DowlingElement f = e;
                int m = blocks[a].members.front();
                for (int x : blocks[b].members) {
                    f.owner[x] = m;
                    f.label[x] = g.mul[e.label[x]][h];
                }
                out.push_back(std::move(f));
            }

    // colour moves: z'(x) = b(x).s
    for (const auto& blk : blocks)
        for (int s = 0; s < spec.gset.size; ++s) {
            DowlingElement f = e;
            for (int x : blk.members) {
                f.owner[x] = -1;
                f.label[x] = spec.gset.act(e.label[x], s);
            }
            if (t_restriction_holds(spec, info.orbit_of, info.in_t, f))
                out.push_back(std::move(f));
        }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int DowlingPoset::index_of(const DowlingElement& e) const
{
    auto it = index.find(e);
    require(it != index.end(), "invalid_element", "element not in the poset: " + to_string(e));
    return it->second;
}

DowlingPoset build_poset(const DowlingSpec& spec, std::size_t cap)
{
    require(spec.n >= 0, "invalid_spec", "negative ground-set size");
    std::unordered_map<DowlingElement, int, DowlingElementHash> found;
    std::vector<DowlingElement> elems;
    std::vector<std::vector<int>> up;
    std::deque<int> queue;

    auto intern = [&](const DowlingElement& x) {
        auto [it, inserted] = found.emplace(x, static_cast<int>(elems.size()));
        if (inserted) {
            require(elems.size() < cap, "cap_exceeded",
                    "Dowling poset exceeds the cap of " + std::to_string(cap) + " elements (" +
                        std::to_string(elems.size()) + " found so far)");
            elems.push_back(x);
            up.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(bottom_element(spec));
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        auto cov = covers_of(spec, elems[i]);
        for (const auto& c : cov) {
            int j = intern(c);
            up[i].push_back(j);
        }
    }

    const int n = static_cast<int>(elems.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int ra = elems[a].rank(), rb = elems[b].rank();
        if (ra != rb)
            return ra < rb;
        return elems[a] < elems[b];
    });
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k)
        pos[order[k]] = k;

    DowlingPoset dp;
    dp.spec = spec;
    std::vector<std::pair<int, int>> covers;
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k) {
        dp.elements.push_back(elems[order[k]]);
        rank[k] = dp.elements.back().rank();
        dp.index.emplace(dp.elements.back(), k);
    }
    for (int i = 0; i < n; ++i)
        for (int j : up[i])
            covers.emplace_back(pos[i], pos[j]);
    std::sort(covers.begin(), covers.end());
    dp.poset = Poset::from_covers(n, covers, rank);
    return dp;
}

DowlingSpec orbit_dowling_spec(const GSetSpec& gset, int s, int n)
{
    std::vector<int> stab;
    for (int a = 0; a < gset.group.order; ++a)
        if (gset.act(a, s) == s)
            stab.push_back(a);
    GroupTable gs = extract_subgroup(gset.group, stab);
    std::vector<int> t;
    if (gset.in_t(s))
        t.push_back(0);
    return DowlingSpec{make_gset(std::move(gs), 1, {}, std::move(t)), n};
}

std::vector<IntervalFactor> factor_interval(const DowlingSpec& spec, const DowlingElement& e)
{
    validate_element(spec, e);
    std::vector<IntervalFactor> out;
    for (const auto& b : e.blocks()) {
        IntervalFactor f{IntervalFactor::Kind::Partition, b.members, -1,
                         partition_lattice_spec(static_cast<int>(b.members.size()))};
        out.push_back(std::move(f));
    }
    auto orbits = orbits_and_stabilizers(spec.gset);
    std::vector<int> orbit_of(spec.gset.size, -1);
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (int s : orbits[o].points)
            orbit_of[s] = static_cast<int>(o);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        std::vector<int> ground;
        for (auto [x, s] : e.zero_coloring())
            if (orbit_of[s] == static_cast<int>(o))
                ground.push_back(x);
        if (ground.empty())
            continue; // D_0 is a point
        int rep = orbits[o].representative;
        IntervalFactor f{IntervalFactor::Kind::Dowling, ground, rep,
                         orbit_dowling_spec(spec.gset, rep, static_cast<int>(ground.size()))};
        out.push_back(std::move(f));
    }
    return out;
}

Poset factor_product(const std::vector<IntervalFactor>& factors)
{
    Poset acc = Poset::from_covers(1, {}, std::vector<int>{0});
    for (const auto& f : factors)
        acc = direct_product(acc, build_poset(f.spec).poset);
    return acc;
}

Integer count_elements_species(const DowlingSpec& spec)
{
    const int n = spec.n;
    require(n >= 0, "invalid_spec", "negative ground-set size");
    const int w = spec.group().order;
    WeightedSeries blocks(n, w);
    for (int m = 1; m <= n; ++m)
        blocks.add_term(m, 0, 0, Rational(1) / (Rational(w) * Rational(factorial(m))));
    WeightedSeries total = series_exp(blocks);
    for (const auto& o : orbits_and_stabilizers(spec.gset)) {
        const Integer gs = static_cast<int>(o.stabilizer.size());
        const bool in_t = spec.gset.in_t(o.representative);
        WeightedSeries f(n, w);
        for (int k = 0; k <= n; ++k) {
            if (k == 1 && !in_t)
                continue;
            f.add_term(k, 0, 0, Rational(1) / Rational(boost::multiprecision::pow(gs, k) * factorial(k)));
        }
        total = series_mul(total, f);
    }
    return total.unweighted(n, 0, 0);
}

DowlingElement wreath_act(const DowlingSpec& spec, const WreathElement& w, const DowlingElement& e)
{
    validate_element(spec, e);
    require(static_cast<int>(w.perm.size()) == spec.n && static_cast<int>(w.colors.size()) == spec.n,
            "length_mismatch", "wreath element has the wrong length");
    const auto& g = spec.group();
    std::vector<DowlingElement::Block> blocks;
    for (const auto& b : e.blocks()) {
        DowlingElement::Block nb;
        for (std::size_t k = 0; k < b.members.size(); ++k) {
            int x = b.members[k];
            nb.members.push_back(w.perm[x]);
            nb.colors.push_back(g.mul[w.colors[x]][b.colors[k]]);
        }
        blocks.push_back(std::move(nb));
    }
    std::vector<std::pair<int, int>> zero;
    for (auto [x, s] : e.zero_coloring())
        zero.emplace_back(w.perm[x], spec.gset.act(w.colors[x], s));
    return make_element(spec, blocks, zero);
}

std::vector<int> wreath_permutation(const DowlingPoset& dp, const WreathElement& w)
{
    std::vector<int> perm(dp.elements.size());
    for (std::size_t i = 0; i < dp.elements.size(); ++i)
        perm[i] = dp.index_of(wreath_act(dp.spec, w, dp.elements[i]));
    return perm;
}

} // namespace ocs
