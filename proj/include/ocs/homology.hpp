#pragma once

#include "ocs/poset.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ocs {

struct DowlingSpec;

// degree -> rank; zero entries are not stored.
struct BettiTable {
    std::map<int, std::int64_t> ranks;

    std::int64_t operator[](int k) const
    {
        auto it = ranks.find(k);
        return it == ranks.end() ? 0 : it->second;
    }
    std::int64_t euler_characteristic() const; // sum (-1)^k rank_k
    std::int64_t total() const;
    // true if all rank sits in degree k (or the table is empty)
    bool concentrated_in(int k) const;
    bool operator==(const BettiTable&) const = default;
};

// Reduced chain complex of the order complex of a poset. Slot k + 1 holds
// the k-chains, slot 0 the augmentation.
struct ChainComplex {
    OrderComplex complex;
    std::vector<std::int64_t> dims; // dims[k + 1] = number of k-chains
    // boundary[k + 1]: columns indexed by k-chains, rows by (k-1)-chains
    std::vector<std::vector<std::vector<std::pair<int, std::int64_t>>>> boundary;
};

// Builds the complex and checks that consecutive boundaries compose to zero.
ChainComplex chain_complex(const Poset& p);

// Reduced homology over Q of the order complex of p; the empty poset has
// a single class in degree -1.
BettiTable reduced_homology(const Poset& p);

// Homology of the open interval of a bounded poset. A one-point poset has its
// class in degree -2, so that the bottom element sits in Whitney degree 0.
BettiTable interval_homology(const Poset& bounded);

struct WhitneyHomology {
    // (rank r, degree k) -> dimension, where H~_{k-2} of the interval below x
    // contributes at (rk x, k)
    std::map<std::pair<int, int>, std::int64_t> dims;
    bool concentrated = true; // every interval has homology only in degree rk - 2
    std::map<int, std::int64_t> mobius_whitney; // r -> sum over rk x = r of |mu(0, x)|
    bool philip_hall = true; // sum (-1)^i b_i = mu(0, x) for every x

    std::int64_t operator()(int r, int k) const
    {
        auto it = dims.find({r, k});
        return it == dims.end() ? 0 : it->second;
    }
};

// Requires a ranked poset with a unique minimum.
WhitneyHomology whitney_homology(const Poset& p);

struct FactorizationReport {
    bool ok = true;
    std::vector<std::string> mismatches;
    WhitneyHomology whitney;
    std::map<std::pair<int, int>, std::int64_t> predicted; // (r, k) -> dim
};

// Compares the Whitney homology of the Dowling poset with the coefficient of
// t^n in the product of block and orbit factors.
FactorizationReport whitney_factorization_check(const DowlingSpec& spec);

// Reduced Lefschetz number sum_k (-1)^k tr(g | C_k), including the
// augmentation in degree -1. perm must be an automorphism of p.
std::int64_t lefschetz_character(const Poset& p, const std::vector<int>& perm);

bool is_automorphism(const Poset& p, const std::vector<int>& perm);

} // namespace ocs
