#include "ocs/homology.hpp"
#include "ocs/errors.hpp"
#include "sparse_rank.hpp"

#include <algorithm>
#include <cstdlib>

namespace ocs {

std::int64_t BettiTable::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (auto [k, r] : ranks)
        chi += (std::abs(k) % 2 == 0) ? r : -r;
    return chi;
}

std::int64_t BettiTable::total() const
{
    std::int64_t t = 0;
    for (auto [k, r] : ranks)
        t += r;
    return t;
}

bool BettiTable::concentrated_in(int k) const
{
    for (auto [d, r] : ranks)
        if (d != k && r != 0)
            return false;
    return true;
}

ChainComplex chain_complex(const Poset& p)
{
    ChainComplex cc;
    cc.complex = order_complex(p);
    const auto& S = cc.complex.simplices;
    const int top = static_cast<int>(S.size()) - 1;
    cc.dims.assign(top + 2, 0);
    cc.dims[0] = 1;
    for (int k = 0; k <= top; ++k)
        cc.dims[k + 1] = static_cast<std::int64_t>(S[k].size());

    cc.boundary.assign(top + 2, {});
    // vertices hit the augmentation with coefficient 1
    if (top >= 0)
        cc.boundary[1].assign(S[0].size(), {{0, 1}});
    std::vector<int> face;
    for (int k = 1; k <= top; ++k) {
        auto& cols = cc.boundary[k + 1];
        cols.resize(S[k].size());
        const auto& faces = S[k - 1];
        for (std::size_t c = 0; c < S[k].size(); ++c) {
            const auto& chain = S[k][c];
            for (int i = 0; i <= k; ++i) {
                face.clear();
                for (int j = 0; j <= k; ++j)
                    if (j != i)
                        face.push_back(chain[j]);
                auto it = std::lower_bound(faces.begin(), faces.end(), face);
                require(it != faces.end() && *it == face, "internal", "face missing from order complex");
                cols[c].emplace_back(static_cast<int>(it - faces.begin()), (i % 2 == 0) ? 1 : -1);
            }
            std::sort(cols[c].begin(), cols[c].end());
        }
    }

    // d_k o d_{k+1} = 0
    for (int k = 0; k <= top; ++k) {
        const auto& upper = cc.boundary[k + 1];
        const auto& lower = cc.boundary[k];
        if (k == 0) {
            continue; // the augmentation has no boundary
        }
        std::vector<std::pair<int, std::int64_t>> acc;
        for (const auto& col : upper) {
            acc.clear();
            for (auto [row, v] : col)
                for (auto [row2, v2] : lower[row])
                    acc.emplace_back(row2, v * v2);
            std::sort(acc.begin(), acc.end());
            for (std::size_t i = 0; i < acc.size();) {
                std::int64_t sum = 0;
                std::size_t j = i;
                for (; j < acc.size() && acc[j].first == acc[i].first; ++j)
                    sum += acc[j].second;
                require(sum == 0, "internal", "boundary maps do not compose to zero");
                i = j;
            }
        }
    }
    return cc;
}

BettiTable reduced_homology(const Poset& p)
{
    ChainComplex cc = chain_complex(p);
    const int slots = static_cast<int>(cc.dims.size());
    // rank of boundary[s] : slot s -> slot s - 1
    std::vector<std::int64_t> rk(slots + 1, 0);
    for (int s = 1; s < slots; ++s)
        rk[s] = detail::exact_rank(cc.boundary[s]);
    BettiTable bt;
    for (int s = 0; s < slots; ++s) {
        std::int64_t b = cc.dims[s] - rk[s] - rk[s + 1];
        if (b != 0)
            bt.ranks[s - 1] = b;
    }
    return bt;
}

BettiTable interval_homology(const Poset& bounded)
{
    require(bounded.bottom() && bounded.top(), "not_bounded", "interval homology needs a bounded poset");
    if (bounded.size() == 1) {
        BettiTable bt;
        bt.ranks[-2] = 1;
        return bt;
    }
    return reduced_homology(proper_part(bounded));
}

WhitneyHomology whitney_homology(const Poset& p)
{
    auto bot = p.bottom();
    require(bot.has_value(), "not_bounded_below", "Whitney homology needs a unique minimum");
    require(p.ranked(), "not_ranked", "Whitney homology needs rank labels");
    WhitneyHomology wh;
    const auto& mu = p.mobius_row(*bot);
    for (int x = 0; x < p.size(); ++x) {
        const int r = p.rank(x) - p.rank(*bot);
        BettiTable bt = interval_homology(lower_interval(p, x));
        for (auto [deg, dim] : bt.ranks)
            wh.dims[{r, deg + 2}] += dim;
        if (!bt.concentrated_in(r - 2))
            wh.concentrated = false;
        if (bt.euler_characteristic() != mu[x])
            wh.philip_hall = false;
        wh.mobius_whitney[r] += std::abs(mu[x]);
    }
    return wh;
}

bool is_automorphism(const Poset& p, const std::vector<int>& perm)
{
    const int n = p.size();
    if (static_cast<int>(perm.size()) != n)
        return false;
    std::vector<char> seen(n, 0);
    for (int x : perm) {
        if (x < 0 || x >= n || seen[x])
            return false;
        seen[x] = 1;
    }
    for (int a = 0; a < n; ++a) {
        if (p.up(a).size() != p.up(perm[a]).size())
            return false;
        for (int b : p.up(a))
            if (!std::binary_search(p.up(perm[a]).begin(), p.up(perm[a]).end(), perm[b]))
                return false;
    }
    return true;
}

std::int64_t lefschetz_character(const Poset& p, const std::vector<int>& perm)
{
    require(is_automorphism(p, perm), "not_automorphism", "action is not a poset automorphism");
    // An order automorphism fixing a chain as a set fixes it pointwise, with
    // orientation sign +1, so the trace on C_k counts chains of fixed points.
    // s[x] = sum over fixed chains with maximum x of (-1)^(length - 1).
    std::vector<std::int64_t> s(p.size(), 0);
    std::int64_t total = 0;
    for (int x : p.linear_extension()) {
        if (perm[x] != x)
            continue;
        std::int64_t v = 1;
        p.below(x).for_each([&](int y) {
            if (y != x && perm[y] == y)
                v -= s[y];
        });
        s[x] = v;
        total += v;
    }
    return total - 1;
}

} // namespace ocs
