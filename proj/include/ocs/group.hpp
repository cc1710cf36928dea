#pragma once

#include <cstdint>
#include <vector>

namespace ocs {

// Finite group given by its multiplication table: mul[a][b] = a*b.
struct GroupTable {
    int order = 1;
    std::vector<std::vector<int>> mul{{0}};
    int identity = 0;
    std::vector<int> inv{0};

    int op(int a, int b) const { return mul[a][b]; }
};

GroupTable cyclic_group(int k);

// Validates the table (closure, associativity, identity, inverses) and
// fills identity/inv.
GroupTable group_from_table(std::vector<std::vector<int>> mul);

void validate_group(const GroupTable& g);

int element_order(const GroupTable& g, int a);

bool is_subgroup(const GroupTable& g, const std::vector<int>& elements);

// Standalone table of a subgroup. Element i of the result is elements[i]
// after sorting; the identity of g becomes index 0.
GroupTable extract_subgroup(const GroupTable& g, std::vector<int> elements);

// A finite G-set S with a G-invariant subset T.
struct GSetSpec {
    GroupTable group;
    int size = 0;
    std::vector<std::vector<int>> action; // action[g][s] = g.s
    std::vector<int> t_subset;            // sorted

    int act(int g, int s) const { return action[g][s]; }
    bool in_t(int s) const;
};

// Builds and validates a G-set. An empty action means the trivial action.
GSetSpec make_gset(GroupTable group, int size, std::vector<std::vector<int>> action,
                   std::vector<int> t_subset);

struct Orbit {
    std::vector<int> points; // sorted
    int representative = 0;
    std::vector<int> stabilizer; // sorted element indices
};

std::vector<Orbit> orbits_and_stabilizers(const GSetSpec& gset);

// orbit index of every point
std::vector<int> orbit_index(const GSetSpec& gset);

// (colors, perm) with the composition rule
//   (w2 w1).perm = w2.perm o w1.perm
//   (w2 w1).colors[i] = w2.colors[w1.perm[i]] * w1.colors[i]
struct WreathElement {
    std::vector<int> colors;
    std::vector<int> perm;

    bool operator==(const WreathElement&) const = default;
};

WreathElement wreath_identity(const GroupTable& g, int n);
WreathElement wreath_compose(const GroupTable& g, const WreathElement& w2, const WreathElement& w1);
WreathElement wreath_inverse(const GroupTable& g, const WreathElement& w);

// All |G|^n n! elements; intended for small n.
std::vector<WreathElement> wreath_group(const GroupTable& g, int n);

} // namespace ocs
