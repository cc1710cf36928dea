#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace ocs {

// Fixed-width bit row used for the reachability table.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(int n) : words_((n + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void merge(const BitRow& o)
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] |= o.words_[k];
    }
    const std::vector<std::uint64_t>& words() const { return words_; }
    int count() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(k * 64 + b));
                w &= w - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

class Poset {
public:
    Poset() = default;

    // Rejects cycles, duplicate covers and covers implied by transitivity.
    // If rank is given, every cover must raise it by exactly one. Otherwise the
    // height above the minimal elements is used when every cover raises it by one.
    static Poset from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                             std::optional<std::vector<int>> rank = std::nullopt);

    int size() const { return n_; }
    const std::vector<int>& up(int a) const { return up_[a]; }
    const std::vector<int>& down(int a) const { return down_[a]; }
    bool leq(int a, int b) const { return above_[a].test(b); }
    bool lt(int a, int b) const { return a != b && leq(a, b); }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
    const BitRow& above(int a) const { return above_[a]; } // {x : a <= x}
    const BitRow& below(int a) const { return below_[a]; } // {x : x <= a}

    bool ranked() const { return !rank_.empty() || n_ == 0; }
    const std::vector<int>& rank() const { return rank_; }
    int rank(int a) const { return rank_.at(a); }

    // Elements in an order compatible with <=.
    const std::vector<int>& linear_extension() const { return topo_; }

    std::vector<std::pair<int, int>> covers() const;
    int cover_count() const;
    std::vector<int> minimal_elements() const;
    std::vector<int> maximal_elements() const;
    std::optional<int> bottom() const;
    std::optional<int> top() const;

    // Row mu(a, .) over all b >= a, memoized. Entries for b not above a are 0.
    const std::vector<std::int64_t>& mobius_row(int a) const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> up_, down_;
    std::vector<BitRow> above_, below_;
    std::vector<int> rank_;
    std::vector<int> topo_;

    struct MobiusCache;
    std::shared_ptr<MobiusCache> mobius_;
};

std::int64_t mobius(const Poset& p, int a, int b);

// Induced subposet on the given elements (in the given order).
Poset induced_subposet(const Poset& p, const std::vector<int>& elements);

// Induced subposet on {x : x <= b}; elements keep their relative order.
Poset lower_interval(const Poset& p, int b);
std::vector<int> lower_interval_elements(const Poset& p, int b);

// Element (i, j) has index i * |q| + j.
Poset direct_product(const Poset& p, const Poset& q);

// Removes the minimum and maximum of every connected component.
Poset proper_part(const Poset& p);
std::vector<int> proper_part_elements(const Poset& p);

// Cover-preserving bijection f with f[p-element] = q-element, if one exists.
std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q);

// Chains of the order complex, by dimension; each chain is increasing in
// the poset order.
struct OrderComplex {
    std::vector<int> order; // position -> element (a linear extension)
    std::vector<int> position; // element -> position
    std::vector<std::vector<std::vector<int>>> simplices; // [k] = chains of k+1 elements, as positions, lex sorted
};

OrderComplex order_complex(const Poset& p);

} // namespace ocs
