#include "ocs/poset.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace ocs {

namespace {

// Longest chain length down to a minimal element.
std::vector<int> heights(const Poset& p)
{
    std::vector<int> h(p.size(), 0);
    for (int a : p.linear_extension())
        for (int b : p.up(a))
            h[b] = std::max(h[b], h[a] + 1);
    return h;
}

std::vector<int> depths(const Poset& p)
{
    std::vector<int> d(p.size(), 0);
    const auto& topo = p.linear_extension();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (int b : p.down(*it))
            d[b] = std::max(d[b], d[*it] + 1);
    return d;
}

using Signature = std::vector<long>;

// Joint colour refinement of both posets so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine(const Poset& p, const Poset& q)
{
    auto initial = [](const Poset& x) {
        auto h = heights(x);
        auto d = depths(x);
        std::vector<Signature> sig(x.size());
        for (int a = 0; a < x.size(); ++a)
            sig[a] = {h[a], d[a], x.below(a).count(), x.above(a).count(),
                      static_cast<long>(x.up(a).size()), static_cast<long>(x.down(a).size())};
        return sig;
    };
    auto sp = initial(p);
    auto sq = initial(q);

    std::vector<int> cp(p.size()), cq(q.size());
    int classes = -1;
    for (int round = 0; round < 64; ++round) {
        std::map<Signature, int> dict;
        for (const auto& s : sp)
            dict.emplace(s, 0);
        for (const auto& s : sq)
            dict.emplace(s, 0);
        int id = 0;
        for (auto& kv : dict)
            kv.second = id++;
        for (int a = 0; a < p.size(); ++a)
            cp[a] = dict[sp[a]];
        for (int a = 0; a < q.size(); ++a)
            cq[a] = dict[sq[a]];
        if (id == classes)
            break;
        classes = id;

        auto next = [](const Poset& x, const std::vector<int>& c) {
            std::vector<Signature> sig(x.size());
            for (int a = 0; a < x.size(); ++a) {
                Signature s{c[a]};
                std::vector<long> ups, downs;
                for (int b : x.up(a))
                    ups.push_back(c[b]);
                for (int b : x.down(a))
                    downs.push_back(c[b]);
                std::sort(ups.begin(), ups.end());
                std::sort(downs.begin(), downs.end());
                s.push_back(-1);
                s.insert(s.end(), ups.begin(), ups.end());
                s.push_back(-2);
                s.insert(s.end(), downs.begin(), downs.end());
                sig[a] = std::move(s);
            }
            return sig;
        };
        sp = next(p, cp);
        sq = next(q, cq);
    }
    return {cp, cq};
}

struct Matcher {
    const Poset& p;
    const Poset& q;
    std::vector<int> cp, cq;
    std::vector<int> order;
    std::vector<int> f, finv;
    std::vector<std::vector<int>> by_colour;

    bool consistent(int x, int y) const
    {
        // every assigned neighbour of x must map to a neighbour of y, and
        // y must not have extra assigned neighbours
        int nx = 0, ny = 0;
        for (int b : p.up(x))
            if (f[b] >= 0) {
                ++nx;
                if (!std::binary_search(q.up(y).begin(), q.up(y).end(), f[b]))
                    return false;
            }
        for (int b : q.up(y))
            if (finv[b] >= 0)
                ++ny;
        if (nx != ny)
            return false;
        nx = ny = 0;
        for (int b : p.down(x))
            if (f[b] >= 0) {
                ++nx;
                if (!std::binary_search(q.down(y).begin(), q.down(y).end(), f[b]))
                    return false;
            }
        for (int b : q.down(y))
            if (finv[b] >= 0)
                ++ny;
        return nx == ny;
    }

    bool search(std::size_t k)
    {
        if (k == order.size())
            return true;
        int x = order[k];
        // candidates: neighbours of an assigned neighbour when possible
        const std::vector<int>* pool = &by_colour[cp[x]];
        std::vector<int> local;
        for (int b : p.down(x))
            if (f[b] >= 0) {
                for (int y : q.up(f[b]))
                    if (cq[y] == cp[x])
                        local.push_back(y);
                pool = &local;
                break;
            }
        if (pool != &local)
            for (int b : p.up(x))
                if (f[b] >= 0) {
                    for (int y : q.down(f[b]))
                        if (cq[y] == cp[x])
                            local.push_back(y);
                    pool = &local;
                    break;
                }
        for (int y : *pool) {
            if (finv[y] >= 0 || !consistent(x, y))
                continue;
            f[x] = y;
            finv[y] = x;
            if (search(k + 1))
                return true;
            f[x] = -1;
            finv[y] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q)
{
    if (p.size() != q.size() || p.cover_count() != q.cover_count())
        return std::nullopt;
    const int n = p.size();
    if (n == 0)
        return std::vector<int>{};

    auto [cp, cq] = refine(p, q);
    {
        auto a = cp, b = cq;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;
    }

    Matcher m{p, q, cp, cq, {}, std::vector<int>(n, -1), std::vector<int>(n, -1), {}};
    int ncol = *std::max_element(cp.begin(), cp.end()) + 1;
    m.by_colour.assign(ncol, {});
    for (int y = 0; y < n; ++y)
        m.by_colour[cq[y]].push_back(y);

    // breadth-first order from the rarest colour, component by component
    std::vector<char> placed(n, 0);
    while (static_cast<int>(m.order.size()) < n) {
        int start = -1;
        for (int a = 0; a < n; ++a)
            if (!placed[a] && (start < 0 || m.by_colour[cp[a]].size() < m.by_colour[cp[start]].size()))
                start = a;
        std::vector<int> queue{start};
        placed[start] = 1;
        for (std::size_t k = 0; k < queue.size(); ++k) {
            int a = queue[k];
            m.order.push_back(a);
            for (const auto* adj : {&p.down(a), &p.up(a)})
                for (int b : *adj)
                    if (!placed[b]) {
                        placed[b] = 1;
                        queue.push_back(b);
                    }
        }
    }

    if (!m.search(0))
        return std::nullopt;
    return m.f;
}

} // namespace ocs
