#include "ocs/group.hpp"
#include "ocs/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ocs {

GroupTable cyclic_group(int k)
{
    require(k >= 1, "invalid_group", "cyclic group order must be positive");
    std::vector<std::vector<int>> mul(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            mul[i][j] = (i + j) % k;
    return group_from_table(std::move(mul));
}

GroupTable group_from_table(std::vector<std::vector<int>> mul)
{
    const int n = static_cast<int>(mul.size());
    require(n >= 1, "invalid_group", "group table is empty");
    for (const auto& row : mul) {
        require(static_cast<int>(row.size()) == n, "invalid_group", "group table is not square");
        for (int x : row)
            require(x >= 0 && x < n, "invalid_group", "group table entry out of range");
    }

    GroupTable g;
    g.order = n;
    g.mul = std::move(mul);

    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b)
            ok = g.mul[a][b] == b && g.mul[b][a] == b;
        if (ok)
            e = a;
    }
    require(e >= 0, "invalid_group", "group table has no identity");
    g.identity = e;

    g.inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul[a][b] == e && g.mul[b][a] == e)
                g.inv[a] = b;
    for (int a = 0; a < n; ++a)
        require(g.inv[a] >= 0, "invalid_group", "element " + std::to_string(a) + " has no inverse");

    validate_group(g);
    return g;
}

void validate_group(const GroupTable& g)
{
    const int n = g.order;
    require(n >= 1 && static_cast<int>(g.mul.size()) == n, "invalid_group", "bad group order");
    require(static_cast<int>(g.inv.size()) == n, "invalid_group", "bad inverse table");
    require(g.identity >= 0 && g.identity < n, "invalid_group", "bad identity");
    for (int a = 0; a < n; ++a) {
        require(g.mul[g.identity][a] == a && g.mul[a][g.identity] == a, "invalid_group",
                "identity is not two-sided");
        require(g.mul[a][g.inv[a]] == g.identity && g.mul[g.inv[a]][a] == g.identity,
                "invalid_group", "inverse table is wrong");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                require(g.mul[g.mul[a][b]][c] == g.mul[a][g.mul[b][c]], "invalid_group",
                        "multiplication is not associative");
}

int element_order(const GroupTable& g, int a)
{
    int k = 1;
    for (int x = a; x != g.identity; x = g.mul[x][a])
        ++k;
    return k;
}

bool is_subgroup(const GroupTable& g, const std::vector<int>& elements)
{
    std::vector<char> in(g.order, 0);
    for (int x : elements) {
        if (x < 0 || x >= g.order || in[x])
            return false;
        in[x] = 1;
    }
    if (!in[g.identity])
        return false;
    for (int a : elements) {
        if (!in[g.inv[a]])
            return false;
        for (int b : elements)
            if (!in[g.mul[a][b]])
                return false;
    }
    return true;
}

GroupTable extract_subgroup(const GroupTable& g, std::vector<int> elements)
{
    require(is_subgroup(g, elements), "invalid_subgroup", "element set is not a subgroup");
    std::sort(elements.begin(), elements.end());
    // identity first so that index 0 is the identity of the result
    std::stable_partition(elements.begin(), elements.end(), [&](int x) { return x == g.identity; });
    std::vector<int> pos(g.order, -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
        pos[elements[i]] = static_cast<int>(i);
    const int k = static_cast<int>(elements.size());
    std::vector<std::vector<int>> mul(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            mul[i][j] = pos[g.mul[elements[i]][elements[j]]];
    return group_from_table(std::move(mul));
}

bool GSetSpec::in_t(int s) const
{
    return std::binary_search(t_subset.begin(), t_subset.end(), s);
}

GSetSpec make_gset(GroupTable group, int size, std::vector<std::vector<int>> action,
                   std::vector<int> t_subset)
{
    require(size >= 0, "invalid_gset", "negative G-set size");
    const int w = group.order;
    if (action.empty()) {
        std::vector<int> id(size);
        std::iota(id.begin(), id.end(), 0);
        action.assign(w, id);
    }
    require(static_cast<int>(action.size()) == w, "invalid_gset", "action table needs one row per group element");
    for (const auto& row : action) {
        require(static_cast<int>(row.size()) == size, "invalid_gset", "action row has wrong length");
        std::vector<char> seen(size, 0);
        for (int x : row) {
            require(x >= 0 && x < size && !seen[x], "invalid_gset", "action row is not a permutation");
            seen[x] = 1;
        }
    }
    for (int s = 0; s < size; ++s)
        require(action[group.identity][s] == s, "invalid_gset", "identity does not act trivially");
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b)
            for (int s = 0; s < size; ++s)
                require(action[group.mul[a][b]][s] == action[a][action[b][s]], "invalid_gset",
                        "action is not a homomorphism");

    std::sort(t_subset.begin(), t_subset.end());
    require(std::adjacent_find(t_subset.begin(), t_subset.end()) == t_subset.end(), "invalid_gset",
            "T has repeated points");
    for (int s : t_subset)
        require(s >= 0 && s < size, "invalid_gset", "T point out of range");
    for (int s : t_subset)
        for (int a = 0; a < w; ++a)
            require(std::binary_search(t_subset.begin(), t_subset.end(), action[a][s]), "invalid_gset",
                    "T is not G-invariant");

    GSetSpec out;
    out.group = std::move(group);
    out.size = size;
    out.action = std::move(action);
    out.t_subset = std::move(t_subset);
    return out;
}

std::vector<Orbit> orbits_and_stabilizers(const GSetSpec& gset)
{
    std::vector<Orbit> out;
    std::vector<char> seen(gset.size, 0);
    for (int s = 0; s < gset.size; ++s) {
        if (seen[s])
            continue;
        Orbit o;
        o.representative = s;
        for (int a = 0; a < gset.group.order; ++a) {
            int t = gset.act(a, s);
            if (!seen[t]) {
                seen[t] = 1;
                o.points.push_back(t);
            }
            if (t == s)
                o.stabilizer.push_back(a);
        }
        std::sort(o.points.begin(), o.points.end());
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<int> orbit_index(const GSetSpec& gset)
{
    std::vector<int> idx(gset.size, -1);
    auto orbits = orbits_and_stabilizers(gset);
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (int s : orbits[i].points)
            idx[s] = static_cast<int>(i);
    return idx;
}

WreathElement wreath_identity(const GroupTable& g, int n)
{
    WreathElement w;
    w.colors.assign(n, g.identity);
    w.perm.resize(n);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    return w;
}

WreathElement wreath_compose(const GroupTable& g, const WreathElement& w2, const WreathElement& w1)
{
    const std::size_t n = w1.perm.size();
    require(w2.perm.size() == n && w1.colors.size() == n && w2.colors.size() == n, "length_mismatch",
            "wreath elements have different lengths");
    WreathElement r;
    r.perm.resize(n);
    r.colors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.perm[i] = w2.perm[w1.perm[i]];
        r.colors[i] = g.mul[w2.colors[w1.perm[i]]][w1.colors[i]];
    }
    return r;
}

WreathElement wreath_inverse(const GroupTable& g, const WreathElement& w)
{
    const std::size_t n = w.perm.size();
    WreathElement r;
    r.perm.resize(n);
    r.colors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.perm[w.perm[i]] = static_cast<int>(i);
        r.colors[w.perm[i]] = g.inv[w.colors[i]];
    }
    return r;
}

std::vector<WreathElement> wreath_group(const GroupTable& g, int n)
{
    std::vector<WreathElement> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> colors(n, 0);
        while (true) {
            out.push_back({colors, perm});
            int i = 0;
            while (i < n && ++colors[i] == g.order)
                colors[i++] = 0;
            if (i == n)
                break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace ocs
