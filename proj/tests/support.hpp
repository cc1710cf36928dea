#pragma once

#include "ocs/dowling.hpp"
#include "ocs/poset.hpp"
#include "ocs/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace testing {

inline ocs::Poset chain(int n)
{
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i + 1 < n; ++i)
        covers.emplace_back(i, i + 1);
    return ocs::Poset::from_covers(n, covers);
}

// Subsets of [n] as bitmasks.
inline ocs::Poset boolean_lattice(int n)
{
    std::vector<std::pair<int, int>> covers;
    std::vector<int> rank(1 << n);
    for (int s = 0; s < (1 << n); ++s) {
        rank[s] = __builtin_popcount(s);
        for (int i = 0; i < n; ++i)
            if (!(s >> i & 1))
                covers.emplace_back(s, s | (1 << i));
    }
    return ocs::Poset::from_covers(1 << n, covers, rank);
}

inline ocs::Poset partition_lattice(int n)
{
    return ocs::build_poset(ocs::partition_lattice_spec(n)).poset;
}

// Random poset on n elements: a random relation along 0 < 1 < ... < n-1,
// transitively closed, then reduced to its covers.
inline ocs::Poset random_poset(std::mt19937& rng, int n, double density)
{
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    std::bernoulli_distribution coin(density);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            lt[a][b] = coin(rng);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (lt[a][k] && lt[k][b])
                    lt[a][b] = true;
    std::vector<std::pair<int, int>> covers;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!lt[a][b])
                continue;
            bool cover = true;
            for (int k = a + 1; k < b && cover; ++k)
                if (lt[a][k] && lt[k][b])
                    cover = false;
            if (cover)
                covers.emplace_back(a, b);
        }
    return ocs::Poset::from_covers(n, covers);
}

// Adds a new minimum and maximum.
inline ocs::Poset bounded_extension(const ocs::Poset& p)
{
    const int n = p.size();
    std::vector<std::pair<int, int>> covers;
    for (auto [a, b] : p.covers())
        covers.emplace_back(a + 1, b + 1);
    for (int x : p.minimal_elements())
        covers.emplace_back(0, x + 1);
    for (int x : p.maximal_elements())
        covers.emplace_back(x + 1, n + 1);
    if (n == 0)
        covers.emplace_back(0, 1);
    return ocs::Poset::from_covers(n + 2, covers);
}

// mu(a, b) as the alternating count of chains a = x0 < ... < xk = b.
inline std::int64_t mobius_by_chains(const ocs::Poset& p, int a, int b)
{
    if (a == b)
        return 1;
    if (!p.leq(a, b))
        return 0;
    std::int64_t total = 0;
    // chains ending at b, by length parity, via DFS from a
    std::vector<std::pair<int, int>> stack{{a, 0}};
    while (!stack.empty()) {
        auto [x, len] = stack.back();
        stack.pop_back();
        for (int y = 0; y < p.size(); ++y) {
            if (!p.lt(x, y) || !p.leq(y, b))
                continue;
            if (y == b)
                total += (len + 1) % 2 ? -1 : 1;
            else
                stack.emplace_back(y, len + 1);
        }
    }
    return total;
}

// Unsigned Stirling numbers of the first kind c(n, k).
inline std::vector<std::vector<std::int64_t>> stirling_first(int nmax)
{
    std::vector<std::vector<std::int64_t>> c(nmax + 1, std::vector<std::int64_t>(nmax + 1, 0));
    c[0][0] = 1;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k)
            c[n][k] = c[n - 1][k - 1] + (n - 1) * c[n - 1][k];
    return c;
}

// Stirling numbers of the second kind S(n, k).
inline std::vector<std::vector<std::int64_t>> stirling_second(int nmax)
{
    std::vector<std::vector<std::int64_t>> s(nmax + 1, std::vector<std::int64_t>(nmax + 1, 0));
    s[0][0] = 1;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k)
            s[n][k] = s[n - 1][k - 1] + k * s[n - 1][k];
    return s;
}

// Coefficients of prod_{i=1}^{n-1} (1 + a_i z), a_i = step(i).
template <class F>
std::vector<std::int64_t> product_poly(int factors, F step)
{
    std::vector<std::int64_t> c{1};
    for (int i = 1; i <= factors; ++i) {
        std::vector<std::int64_t> next(c.size() + 1, 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] += c[k] * step(i);
        }
        c = next;
    }
    return c;
}

} // namespace testing
