#pragma once

#include "ocs/rational.hpp"

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ocs::detail {

struct Overflow {};

// Sparse column: (row, value) pairs sorted by row, no zeros.
template <class T>
using SparseColumn = std::vector<std::pair<int, T>>;

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }

inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }
inline Integer gcd_abs(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

// c <- alpha * c - beta * p, then divided by the content of c.
template <class T>
void combine(SparseColumn<T>& c, const T& alpha, const SparseColumn<T>& p, const T& beta)
{
    SparseColumn<T> out;
    out.reserve(c.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < c.size() || j < p.size()) {
        if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
            out.emplace_back(c[i].first, checked_mul(alpha, c[i].second));
            ++i;
        } else if (i == c.size() || p[j].first < c[i].first) {
            out.emplace_back(p[j].first, checked_sub(T(0), checked_mul(beta, p[j].second)));
            ++j;
        } else {
            T v = checked_sub(checked_mul(alpha, c[i].second), checked_mul(beta, p[j].second));
            if (v != 0)
                out.emplace_back(c[i].first, v);
            ++i;
            ++j;
        }
    }
    T g = 0;
    for (const auto& e : out) {
        g = gcd_abs(g, e.second);
        if (g == 1)
            break;
    }
    if (g > 1)
        for (auto& e : out)
            e.second /= g;
    c = std::move(out);
}

// Rank over Q by fraction-free column reduction: each column is reduced
// against earlier pivots (keyed by lowest nonzero row), keeping integer
// entries with content removed. Columns reducing to zero are dropped.
template <class T>
int column_rank(std::vector<SparseColumn<T>> cols)
{
    std::unordered_map<int, std::size_t> pivot_of_row;
    std::vector<SparseColumn<T>> pivots;
    int rank = 0;
    for (auto& c : cols) {
        while (!c.empty()) {
            int low = c.back().first;
            auto it = pivot_of_row.find(low);
            if (it == pivot_of_row.end())
                break;
            const auto& p = pivots[it->second];
            T a = p.back().second;
            T b = c.back().second;
            T g = gcd_abs(a, b);
            combine(c, T(a / g), p, T(b / g));
        }
        if (!c.empty()) {
            pivot_of_row.emplace(c.back().first, pivots.size());
            pivots.push_back(std::move(c));
            ++rank;
        }
    }
    return rank;
}

// 64-bit arithmetic first; on overflow redo with arbitrary precision.
inline int exact_rank(const std::vector<SparseColumn<std::int64_t>>& cols)
{
    try {
        return column_rank<std::int64_t>(cols);
    } catch (const Overflow&) {
        std::vector<SparseColumn<Integer>> big(cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k)
            for (const auto& e : cols[k])
                big[k].emplace_back(e.first, Integer(e.second));
        return column_rank<Integer>(std::move(big));
    }
}

} // namespace ocs::detail
