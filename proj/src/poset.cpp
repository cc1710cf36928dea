#include "ocs/poset.hpp"
#include "ocs/errors.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

namespace ocs {

int BitRow::count() const
{
    int c = 0;
    for (auto w : words_)
        c += __builtin_popcountll(w);
    return c;
}

struct Poset::MobiusCache {
    std::mutex mutex;
    std::unordered_map<int, std::vector<std::int64_t>> rows;
};

Poset Poset::from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                         std::optional<std::vector<int>> rank)
{
    require(n >= 0, "invalid_poset", "negative element count");
    Poset p;
    p.n_ = n;
    p.up_.assign(n, {});
    p.down_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : covers) {
        require(a >= 0 && a < n && b >= 0 && b < n, "invalid_poset", "cover index out of range");
        require(a != b, "invalid_poset", "cover from an element to itself");
        require(seen.insert({a, b}).second, "invalid_poset", "duplicate cover");
        p.up_[a].push_back(b);
        p.down_[b].push_back(a);
    }
    for (auto& v : p.up_)
        std::sort(v.begin(), v.end());
    for (auto& v : p.down_)
        std::sort(v.begin(), v.end());

    // Kahn's algorithm; smallest available index first for determinism
    std::vector<int> indeg(n);
    for (int a = 0; a < n; ++a)
        indeg[a] = static_cast<int>(p.down_[a].size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int a = 0; a < n; ++a)
        if (indeg[a] == 0)
            ready.push(a);
    while (!ready.empty()) {
        int a = ready.top();
        ready.pop();
        p.topo_.push_back(a);
        for (int b : p.up_[a])
            if (--indeg[b] == 0)
                ready.push(b);
    }
    require(static_cast<int>(p.topo_.size()) == n, "invalid_poset", "cover relation has a cycle");

    p.above_.assign(n, BitRow(n));
    for (auto it = p.topo_.rbegin(); it != p.topo_.rend(); ++it) {
        int a = *it;
        p.above_[a].set(a);
        for (int b : p.up_[a])
            p.above_[a].merge(p.above_[b]);
    }
    p.below_.assign(n, BitRow(n));
    for (int a = 0; a < n; ++a)
        p.above_[a].for_each([&](int b) { p.below_[b].set(a); });

    for (int a = 0; a < n; ++a)
        for (int b : p.up_[a])
            for (int c : p.up_[a])
                if (c != b && p.leq(c, b))
                    throw Error("invalid_poset", "cover (" + std::to_string(a) + "," + std::to_string(b) +
                                                     ") is implied by transitivity");

    if (rank) {
        require(static_cast<int>(rank->size()) == n, "invalid_poset", "rank vector has wrong length");
        for (int a = 0; a < n; ++a)
            for (int b : p.up_[a])
                require((*rank)[b] == (*rank)[a] + 1, "invalid_poset", "cover does not raise rank by one");
        p.rank_ = std::move(*rank);
    } else {
        // graded from the minimal elements, if every cover raises the height by one
        std::vector<int> h(n, 0);
        for (int a : p.topo_)
            for (int b : p.down_[a])
                h[a] = std::max(h[a], h[b] + 1);
        bool graded = true;
        for (int a = 0; a < n && graded; ++a)
            for (int b : p.up_[a])
                graded = graded && h[b] == h[a] + 1;
        if (graded)
            p.rank_ = std::move(h);
    }
    p.mobius_ = std::make_shared<MobiusCache>();
    return p;
}

std::vector<std::pair<int, int>> Poset::covers() const
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
        for (int b : up_[a])
            out.emplace_back(a, b);
    return out;
}

int Poset::cover_count() const
{
    int c = 0;
    for (const auto& v : up_)
        c += static_cast<int>(v.size());
    return c;
}

std::vector<int> Poset::minimal_elements() const
{
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
        if (down_[a].empty())
            out.push_back(a);
    return out;
}

std::vector<int> Poset::maximal_elements() const
{
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
        if (up_[a].empty())
            out.push_back(a);
    return out;
}

std::optional<int> Poset::bottom() const
{
    auto m = minimal_elements();
    if (m.size() == 1)
        return m[0];
    return std::nullopt;
}

std::optional<int> Poset::top() const
{
    auto m = maximal_elements();
    if (m.size() == 1)
        return m[0];
    return std::nullopt;
}

const std::vector<std::int64_t>& Poset::mobius_row(int a) const
{
    require(mobius_ != nullptr && a >= 0 && a < n_, "invalid_element", "element out of range");
    std::lock_guard<std::mutex> lock(mobius_->mutex);
    auto it = mobius_->rows.find(a);
    if (it != mobius_->rows.end())
        return it->second;

    std::vector<std::int64_t> mu(n_, 0);
    const auto& up_a = above_[a].words();
    for (int x : topo_) {
        if (!leq(a, x))
            continue;
        if (x == a) {
            mu[x] = 1;
            continue;
        }
        std::int64_t s = 0;
        const auto& dn = below_[x].words();
        for (std::size_t k = 0; k < up_a.size(); ++k) {
            std::uint64_t w = up_a[k] & dn[k];
            while (w) {
                int c = static_cast<int>(k * 64 + __builtin_ctzll(w));
                w &= w - 1;
                if (c != x && __builtin_add_overflow(s, mu[c], &s))
                    throw Error("overflow", "Mobius value overflows 64 bits");
            }
        }
        mu[x] = -s;
    }
    return mobius_->rows.emplace(a, std::move(mu)).first->second;
}

std::int64_t mobius(const Poset& p, int a, int b)
{
    require(a >= 0 && a < p.size() && b >= 0 && b < p.size(), "invalid_element", "element out of range");
    require(p.leq(a, b), "incomparable", "mobius requires a <= b");
    return p.mobius_row(a)[b];
}

namespace {

// Restriction of the covers to a convex subset; covers stay covers.
Poset convex_subposet(const Poset& p, const std::vector<int>& elements)
{
    std::vector<int> pos(p.size(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
        pos[elements[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> covers;
    for (int a : elements)
        for (int b : p.up(a))
            if (pos[b] >= 0)
                covers.emplace_back(pos[a], pos[b]);
    std::optional<std::vector<int>> rank;
    if (!p.rank().empty()) {
        rank.emplace();
        for (int a : elements)
            rank->push_back(p.rank(a));
    }
    return Poset::from_covers(static_cast<int>(elements.size()), covers, std::move(rank));
}

} // namespace

Poset induced_subposet(const Poset& p, const std::vector<int>& elements)
{
    const int m = static_cast<int>(elements.size());
    std::vector<BitRow> strict_above(m, BitRow(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && p.lt(elements[i], elements[j]))
                strict_above[i].set(j);
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < m; ++i)
        strict_above[i].for_each([&](int j) {
            bool is_cover = true;
            strict_above[i].for_each([&](int k) {
                if (is_cover && k != j && strict_above[k].test(j))
                    is_cover = false;
            });
            if (is_cover)
                covers.emplace_back(i, j);
        });
    std::optional<std::vector<int>> rank;
    if (!p.rank().empty()) {
        std::vector<int> r;
        for (int a : elements)
            r.push_back(p.rank(a));
        bool graded = true;
        for (auto [a, b] : covers)
            graded = graded && r[b] == r[a] + 1;
        if (graded)
            rank = std::move(r);
    }
    return Poset::from_covers(m, covers, std::move(rank));
}

std::vector<int> lower_interval_elements(const Poset& p, int b)
{
    require(b >= 0 && b < p.size(), "invalid_element", "element out of range");
    std::vector<int> out;
    p.below(b).for_each([&](int x) { out.push_back(x); });
    return out;
}

Poset lower_interval(const Poset& p, int b)
{
    return convex_subposet(p, lower_interval_elements(p, b));
}

Poset direct_product(const Poset& p, const Poset& q)
{
    const int np = p.size(), nq = q.size();
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j) {
            for (int k : p.up(i))
                covers.emplace_back(i * nq + j, k * nq + j);
            for (int k : q.up(j))
                covers.emplace_back(i * nq + j, i * nq + k);
        }
    std::optional<std::vector<int>> rank;
    if (!p.rank().empty() && !q.rank().empty()) {
        rank.emplace(static_cast<std::size_t>(np) * nq);
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < nq; ++j)
                (*rank)[i * nq + j] = p.rank(i) + q.rank(j);
    }
    return Poset::from_covers(np * nq, covers, std::move(rank));
}

std::vector<int> proper_part_elements(const Poset& p)
{
    const int n = p.size();
    std::vector<int> comp(n, -1);
    std::vector<char> drop(n, 0);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<int> members{s};
        comp[s] = ncomp;
        for (std::size_t k = 0; k < members.size(); ++k) {
            int a = members[k];
            for (const auto* adj : {&p.up(a), &p.down(a)})
                for (int b : *adj)
                    if (comp[b] < 0) {
                        comp[b] = ncomp;
                        members.push_back(b);
                    }
        }
        int mins = 0, maxs = 0;
        for (int a : members) {
            if (p.down(a).empty()) {
                ++mins;
                drop[a] = 1;
            }
            if (p.up(a).empty()) {
                ++maxs;
                drop[a] = 1;
            }
        }
        require(mins == 1 && maxs == 1, "not_bounded",
                "a connected component lacks a unique minimum or maximum");
        ++ncomp;
    }
    std::vector<int> out;
    for (int a = 0; a < n; ++a)
        if (!drop[a])
            out.push_back(a);
    return out;
}

Poset proper_part(const Poset& p)
{
    return convex_subposet(p, proper_part_elements(p));
}

OrderComplex order_complex(const Poset& p)
{
    OrderComplex oc;
    const int n = p.size();
    oc.order = p.linear_extension();
    oc.position.assign(n, 0);
    for (int i = 0; i < n; ++i)
        oc.position[oc.order[i]] = i;
    std::vector<BitRow> succ(n, BitRow(n));
    for (int i = 0; i < n; ++i)
        p.above(oc.order[i]).for_each([&](int b) {
            if (b != oc.order[i])
                succ[i].set(oc.position[b]);
        });

    std::vector<int> chain;
    auto dfs = [&](auto&& self, int last) -> void {
        const std::size_t k = chain.size() - 1;
        if (oc.simplices.size() <= k)
            oc.simplices.resize(k + 1);
        oc.simplices[k].push_back(chain);
        succ[last].for_each([&](int j) {
            chain.push_back(j);
            self(self, j);
            chain.pop_back();
        });
    };
    for (int i = 0; i < n; ++i) {
        chain.assign(1, i);
        dfs(dfs, i);
    }
    for (auto& level : oc.simplices)
        std::sort(level.begin(), level.end());
    return oc;
}

} // namespace ocs
