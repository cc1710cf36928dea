#pragma once

#include "ocs/configuration.hpp"
#include "ocs/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ocs {

struct LocusPoint {
    Rational x, y;
    std::string label; // "main(n,i)" or "orbit[r]"

    Rational norm() const { return x + y; }
};

// Points ((n-1)/n, i/n) for n >= 1 not in removed.
struct LocusFamily {
    int i = 0;
    std::set<int> removed;

    LocusPoint member(int n) const;
    int first_member(int skip = 0) const; // smallest n not removed and != skip
};

struct GenerationLocus {
    int d = 0;
    std::vector<LocusFamily> families; // one per i with b_i != 0
    std::vector<LocusPoint> isolated;  // orbit generators, all at (1, 0)
    bool limit_point = true;           // (1, 0) in the closure
};

// Norm of ((n-1)/n, i/n): 1 + (i-1)/n.
Rational family_norm(int i, int n);

GenerationLocus locus_from_space(const SpaceInput& space);

// Finite listing for display: families up to n_cap.
std::vector<LocusPoint> locus_points(const GenerationLocus& locus, int n_cap);

struct NormLevel {
    Rational norm;
    std::vector<LocusPoint> points; // attaining points (a representative for infinite levels)
    bool infinite = false;          // attained by infinitely many points
    bool attained = true;           // false: only a supremum or the limit point
};

// The largest `levels` taxi-cab norm levels, in decreasing order. Levels
// above 1 are exact and finite; the level at norm 1 is reported last.
std::vector<NormLevel> taxicab_extrema(const GenerationLocus& locus, int levels = 2);

enum class Variant { Left, Right, Bottom };

Variant parse_variant(const std::string& s);
std::string to_string(Variant v);

struct StabilityStep {
    LocusPoint point;
    std::string classification; // "absolute", "bounded" or "truncated"
    std::optional<Rational> epsilon; // empty: infinite (nothing else in the locus)
    bool epsilon_attained = true;    // false if the neighbouring norm is only a supremum
    Rational slope = -1;             // separating line used
    bool from_below = false;         // line touches the locus from below

    Rational norm() const { return point.norm(); }
    // (m |v| + j) / epsilon
    Rational bound(int j, int m = 0) const;
};

StabilityStep classify_step(const GenerationLocus& locus, Variant variant = Variant::Left);

// Removes the chosen point (a family member, or all orbit points).
void remove_point(GenerationLocus& locus, const LocusPoint& p);

// True if every locus point other than v lies strictly on one side of the
// line through v with the given slope (above if `above`).
bool separates(const GenerationLocus& locus, const LocusPoint& v, const Rational& slope, bool above);

struct StabilityReport {
    std::string space;
    Variant variant = Variant::Left;
    bool i_acyclic = false;
    std::vector<StabilityStep> steps;
};

StabilityReport iterate_report(const SpaceInput& space, Variant variant, int steps);

struct GeneratorBoundCheck {
    bool applicable = false; // only absolute steps carry a bound
    bool ok = true;
    Rational bound;
    std::vector<std::string> witnesses; // violations
    bool quotient_nonnegative = true;
};

// Divides the E1 series by the factors of steps 0..step and checks that the
// diagonal p + q = |v| k - (m |v| + j) (or + for bottom steps) of the
// quotient vanishes for k > bound.
GeneratorBoundCheck verify_generator_bound(const SpaceInput& space, const StabilityReport& report, std::size_t step,
                                           int j, int m, int n_max);

// E1 series divided by the listed factors ("main(n,i)" or "orbit[r]").
WeightedSeries divide_factors(const SpaceInput& space, const std::vector<std::string>& labels, int N);

// Labels of every factor up to size N.
std::vector<std::string> all_factor_labels(const SpaceInput& space, int N);

} // namespace ocs
