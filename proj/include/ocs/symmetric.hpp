#pragma once

#include "ocs/dowling.hpp"
#include "ocs/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ocs {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

void validate_partition(const Partition& p);
int partition_size(const Partition& p);
std::string to_string(const Partition& p);

// All partitions of m, in decreasing lexicographic order.
std::vector<Partition> partitions_of(int m);

// z_mu = prod_k k^{m_k} m_k!
Integer centralizer_order(const Partition& mu);
Integer class_size(const Partition& mu);

// A permutation of {0, .., m-1} with cycle type mu.
std::vector<int> cycle_permutation(const Partition& mu);
Partition cycle_type(const std::vector<int>& perm);

// chi^lambda(mu) by border-strip removal.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

// hook-length formula
Integer hook_dimension(const Partition& lambda);

struct CharacterTable {
    int m = 0;
    std::vector<Partition> partitions; // rows (irreducibles) and columns (classes)
    std::vector<std::vector<std::int64_t>> values; // values[lambda][mu]
};

// Memoized per m.
const CharacterTable& character_table(int m);

struct ClassFunction {
    int m = 0;
    std::map<Partition, Rational> values; // class -> value

    Rational operator()(const Partition& mu) const;
};

ClassFunction irreducible_character(const Partition& lambda);

// <f, g> = (1/m!) sum_mu |C_mu| f(mu) g(mu)
Rational inner_product(const ClassFunction& f, const ClassFunction& g);

// Multiplicities of the irreducibles (zero entries dropped). Throws
// "not_a_character" if some multiplicity is not an integer.
std::map<Partition, Integer> decompose(const ClassFunction& cf);

// lambda<m> = (m - |lambda|, lambda_1, ...)
Partition pad_partition(const Partition& lambda, int m);
// Drops the first row.
Partition strip_partition(const Partition& lambda);

struct StableMultiplicityReport {
    bool stable = true;
    std::map<int, std::map<Partition, Integer>> decompositions; // n -> lambda -> multiplicity
    std::map<int, std::map<Partition, Integer>> names;          // n -> stripped lambda -> multiplicity
    std::map<Partition, Integer> stable_names;                  // names at the last n
    std::optional<int> first_violation;                         // first n whose names differ from n - 1
    std::optional<Rational> size_bound;
    bool size_bound_ok = true;
};

// Decomposes each character, renames by stripping the top row, and checks
// that the names agree across the window. With a size bound, also checks
// |name| <= bound for every name.
StableMultiplicityReport stable_multiplicity_check(const std::map<int, ClassFunction>& sequence,
                                                   std::optional<Rational> size_bound = std::nullopt);

// Trace of perm on the rank-r Whitney homology of p, which must be
// concentrated: sum over fixed x of rank r of (-1)^r times the reduced
// Lefschetz number of the proper part of [0, x].
std::int64_t whitney_trace(const Poset& p, const std::vector<int>& perm, int rank);

// Character of S_n (identity colours) on rank-r Whitney homology. Refuses
// with "not_concentrated" if some lower interval has homology outside the
// top degree.
ClassFunction whitney_character(const DowlingPoset& dp, int rank);

} // namespace ocs
