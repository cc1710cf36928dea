#pragma once

#include "ocs/group.hpp"
#include "ocs/poset.hpp"
#include "ocs/rational.hpp"

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ocs {

struct DowlingSpec {
    GSetSpec gset; // carries the group, S and T
    int n = 0;

    const GroupTable& group() const { return gset.group; }
};

// Partition lattice Q_n: trivial group, empty S.
DowlingSpec partition_lattice_spec(int n);

// Dowling lattice D_n(G): S = T = {*}.
DowlingSpec dowling_lattice_spec(const GroupTable& g, int n);

// A partial G-partition of [n] with an S-coloured zero block, stored per
// ground element i:
//   owner[i] = -1       i lies in the zero block and label[i] is a point of S
//   owner[i] = m >= 0   i lies in the block with minimum m and label[i] is its
//                       colour; label[m] is the identity (canonical form)
struct DowlingElement {
    std::vector<int> owner;
    std::vector<int> label;

    auto operator<=>(const DowlingElement&) const = default;
    bool operator==(const DowlingElement&) const = default;

    int size() const { return static_cast<int>(owner.size()); }
    int block_count() const;
    int rank() const { return size() - block_count(); }

    struct Block {
        std::vector<int> members; // increasing
        std::vector<int> colors;  // colors[k] is the colour of members[k]
    };
    std::vector<Block> blocks() const;                    // ordered by minimum
    std::vector<std::pair<int, int>> zero_coloring() const; // (element, point)
};

struct DowlingElementHash {
    std::size_t operator()(const DowlingElement& e) const noexcept;
};

DowlingElement bottom_element(const DowlingSpec& spec);

// Canonical form and the T-restriction.
bool is_valid(const DowlingSpec& spec, const DowlingElement& e);
void validate_element(const DowlingSpec& spec, const DowlingElement& e);

// Builds an element from blocks with arbitrary colourings (any member may
// carry a non-identity colour) and a zero colouring; canonicalizes.
DowlingElement make_element(const DowlingSpec& spec, const std::vector<DowlingElement::Block>& blocks,
                            const std::vector<std::pair<int, int>>& zero);

// String form, elements 1-based: blocks "g:e,g:e" joined by '|', then
// "Z{e:s,...}". Example: "0:1,1:2|0:3|Z{4:0}".
std::string to_string(const DowlingElement& e);
// Accepts blocks in any order and any colour representative.
DowlingElement parse_element(const DowlingSpec& spec, const std::string& s);

std::vector<DowlingElement> covers_of(const DowlingSpec& spec, const DowlingElement& e);

struct DowlingPoset {
    DowlingSpec spec;
    Poset poset;
    std::vector<DowlingElement> elements; // index -> element
    std::unordered_map<DowlingElement, int, DowlingElementHash> index;

    int index_of(const DowlingElement& e) const;
};

// Breadth-first closure from the bottom. Elements are numbered by rank, then
// lexicographically by (owner, label).
DowlingPoset build_poset(const DowlingSpec& spec, std::size_t cap = 200000);

struct IntervalFactor {
    enum class Kind { Partition, Dowling } kind;
    std::vector<int> ground; // block members, or z^{-1}([s])
    int orbit_representative = -1; // for Dowling factors
    DowlingSpec spec;        // Q_B as a Dowling spec, or D^T(G_s, s)
};

// One partition-lattice factor per block, and one Dowling factor per orbit
// whose part of the zero block is nonempty.
std::vector<IntervalFactor> factor_interval(const DowlingSpec& spec, const DowlingElement& e);

// Direct product of the factor posets, in factor order.
Poset factor_product(const std::vector<IntervalFactor>& factors);

// Single-point G_s-set {s} with T = {s} or empty, as in the orbit factors.
DowlingSpec orbit_dowling_spec(const GSetSpec& gset, int s, int n);

Integer count_elements_species(const DowlingSpec& spec);

DowlingElement wreath_act(const DowlingSpec& spec, const WreathElement& w, const DowlingElement& e);

// The permutation of poset indices induced by w.
std::vector<int> wreath_permutation(const DowlingPoset& dp, const WreathElement& w);

} // namespace ocs
