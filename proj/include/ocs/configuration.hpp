#pragma once

#include "ocs/dowling.hpp"
#include "ocs/group.hpp"
#include "ocs/homology.hpp"
#include "ocs/rational.hpp"
#include "ocs/series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ocs {

struct OrbitData {
    std::vector<int> stabilizer; // subgroup of the space's group
    bool in_t = false;
};

// X through its Borel-Moore Betti numbers, with the G-orbits of the
// singular and excluded points.
struct SpaceInput {
    std::string name;
    std::vector<std::int64_t> betti; // b_0 .. b_d
    GroupTable group;
    std::vector<OrbitData> orbits;
    bool i_acyclic = false;

    int d() const { return static_cast<int>(betti.size()) - 1; }
};

// Checks Betti numbers (nonnegative, b_d > 0) and stabilizers.
void validate_space(const SpaceInput& space);

// S as the disjoint union of the cosets G/G_s, with T the union of the
// orbits flagged in_t.
GSetSpec orbit_gset(const SpaceInput& space);
DowlingSpec dowling_spec_for(const SpaceInput& space, int n);

// h_k = dim H~_{k-2} of the proper part of D_k^T(G_s, s), for k <= kmax.
struct OrbitHomology {
    std::vector<std::int64_t> h;
    std::vector<bool> direct; // computed from the poset (false: Mobius-sum recursion)
    bool concentrated = true; // every directly computed poset was concentrated
};

// Posets with at most direct_cap elements are built and their homology
// computed; beyond that h_k comes from the vanishing of sum_x mu(0, x)
// over the bounded poset, with lower intervals split into partition
// lattices and a smaller orbit factor.
OrbitHomology orbit_homology(const GroupTable& stabilizer, bool in_t, int kmax, std::size_t direct_cap = 300);

// P_b(y) x^{n-1} t^n / (w n)
WeightedSeries main_factor_argument(int n, const SpaceInput& space, int N = 8);
// degree-i part of the argument: b_i y^i x^{n-1} t^n / (w n)
WeightedSeries main_component_argument(int n, int i, const SpaceInput& space, int N = 8);
WeightedSeries main_factor(int n, const SpaceInput& space, int N = 8);
WeightedSeries orbit_factor(const SpaceInput& space, std::size_t orbit, int N = 8);

// Product of all main and orbit factors.
WeightedSeries e1_series(const SpaceInput& space, int N = 8);

struct E1Table {
    int truncation = 0;
    std::vector<std::map<std::pair<int, int>, Integer>> rows; // rows[n][(p, q)]

    Integer dim(int n, int p, int q) const;
};

constexpr int kMaxTruncation = 24;

E1Table e1_table(const SpaceInput& space, int N = 8);

// Refuses spaces that are not i-acyclic.
BettiTable bm_betti(const SpaceInput& space, int n);

struct EulerSeries {
    std::vector<Integer> chi; // chi[n] for 0 <= n <= N
    bool closed_form_applies = false; // free action, T empty
    std::vector<Integer> closed_form;
    bool matches = false;
};

EulerSeries euler_series(const SpaceInput& space, int N = 8);

// Euler characteristic sum (-1)^q b_q.
std::int64_t euler_characteristic(const SpaceInput& space);

} // namespace ocs
