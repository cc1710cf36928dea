#include "ocs/stability.hpp"
#include "ocs/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace ocs {

Rational family_norm(int i, int n)
{
    return 1 + Rational(i - 1, n);
}

LocusPoint LocusFamily::member(int n) const
{
    return {Rational(n - 1, n), Rational(i, n), "main(" + std::to_string(n) + "," + std::to_string(i) + ")"};
}

int LocusFamily::first_member(int skip) const
{
    int n = 1;
    while (removed.count(n) || n == skip)
        ++n;
    return n;
}

GenerationLocus locus_from_space(const SpaceInput& space)
{
    validate_space(space);
    GenerationLocus locus;
    locus.d = space.d();
    for (int i = 0; i <= space.d(); ++i)
        if (space.betti[i] != 0)
            locus.families.push_back({i, {}});
    for (std::size_t r = 0; r < space.orbits.size(); ++r) {
        GroupTable gs = extract_subgroup(space.group, space.orbits[r].stabilizer);
        auto oh = orbit_homology(gs, space.orbits[r].in_t, 4);
        bool any = false;
        for (int k = 1; k <= 4; ++k)
            any = any || oh.h[k] != 0;
        if (any)
            locus.isolated.push_back({1, 0, "orbit[" + std::to_string(r) + "]"});
    }
    locus.limit_point = true;
    return locus;
}

std::vector<LocusPoint> locus_points(const GenerationLocus& locus, int n_cap)
{
    std::vector<LocusPoint> out;
    for (const auto& f : locus.families)
        for (int n = 1; n <= n_cap; ++n)
            if (!f.removed.count(n))
                out.push_back(f.member(n));
    for (const auto& p : locus.isolated)
        out.push_back(p);
    return out;
}

namespace {

bool point_less(const LocusPoint& a, const LocusPoint& b)
{
    if (a.x != b.x)
        return a.x < b.x;
    return a.label < b.label;
}

const LocusFamily* family_for(const GenerationLocus& locus, int i)
{
    for (const auto& f : locus.families)
        if (f.i == i)
            return &f;
    return nullptr;
}

// Parses "main(n,i)"; returns false for other labels.
bool parse_main(const std::string& label, int& n, int& i)
{
    return std::sscanf(label.c_str(), "main(%d,%d)", &n, &i) == 2;
}

} // namespace

std::vector<NormLevel> taxicab_extrema(const GenerationLocus& locus, int levels)
{
    std::map<Rational, std::vector<LocusPoint>, std::greater<>> above_one;
    for (const auto& f : locus.families) {
        if (f.i < 2)
            continue;
        // norms decrease in n, so the first `levels` members suffice
        int taken = 0;
        for (int n = 1; taken < levels; ++n)
            if (!f.removed.count(n)) {
                above_one[family_norm(f.i, n)].push_back(f.member(n));
                ++taken;
            }
    }
    for (const auto& p : locus.isolated)
        if (p.norm() > 1)
            above_one[p.norm()].push_back(p);

    std::vector<NormLevel> out;
    for (auto& [norm, pts] : above_one) {
        if (static_cast<int>(out.size()) == levels)
            break;
        std::sort(pts.begin(), pts.end(), point_less);
        out.push_back({norm, pts, false, true});
    }
    if (static_cast<int>(out.size()) < levels) {
        NormLevel one{1, {}, false, false};
        if (const auto* f = family_for(locus, 1)) {
            one.points.push_back(f->member(f->first_member()));
            one.infinite = true;
            one.attained = true;
        }
        for (const auto& p : locus.isolated)
            if (p.norm() == 1) {
                one.points.push_back(p);
                one.attained = true;
            }
        std::sort(one.points.begin(), one.points.end(), point_less);
        if (!locus.families.empty() || locus.limit_point || !one.points.empty())
            out.push_back(std::move(one));
    }
    return out;
}

Variant parse_variant(const std::string& s)
{
    if (s == "left")
        return Variant::Left;
    if (s == "right")
        return Variant::Right;
    if (s == "bottom")
        return Variant::Bottom;
    throw Error("invalid_variant", "variant must be left, right or bottom");
}

std::string to_string(Variant v)
{
    switch (v) {
    case Variant::Left:
        return "left";
    case Variant::Right:
        return "right";
    case Variant::Bottom:
        return "bottom";
    }
    return "left";
}

Rational StabilityStep::bound(int j, int m) const
{
    require(epsilon.has_value() && *epsilon > 0, "no_bound", "step carries no finite epsilon");
    return (Rational(m) * norm() + j) / *epsilon;
}

bool separates(const GenerationLocus& locus, const LocusPoint& v, const Rational& slope, bool above)
{
    const Rational side = above ? 1 : -1;
    // L(x) = v.y + slope (x - v.x); y1 = L(1)
    const Rational y1 = v.y + slope * (1 - v.x);
    auto strictly = [&](const Rational& x, const Rational& y) { return side * (y - (v.y + slope * (x - v.x))) > 0; };

    int vn = 0, vi = -1;
    const bool v_main = parse_main(v.label, vn, vi);
    const bool v_at_limit = v.x == 1 && v.y == 0;

    for (const auto& f : locus.families) {
        const int skip = (v_main && f.i == vi) ? vn : 0;
        // n * side * (i/n - L((n-1)/n)) = side * (i + slope) - side * y1 * n
        const Rational c0 = side * (Rational(f.i) + slope);
        const Rational c1 = side * y1;
        if (c1 > 0)
            return false; // eventually on the wrong side
        if (c1 == 0) {
            if (c0 <= 0)
                return false;
            continue;
        }
        int n = f.first_member(skip);
        if (c0 - c1 * n <= 0)
            return false;
    }
    for (const auto& p : locus.isolated) {
        if (p.x == v.x && p.y == v.y)
            continue;
        if (!strictly(p.x, p.y))
            return false;
    }
    if (locus.limit_point && !v_at_limit && !strictly(1, 0))
        return false;
    return true;
}

namespace {

std::optional<Rational> find_slope(const GenerationLocus& locus, const LocusPoint& v, bool above, bool steep)
{
    // delta = 1, 1/2, ..., 2^-40, then 2, 4, ..., 2^20
    std::vector<Rational> deltas;
    for (int k = 0; k <= 40; ++k)
        deltas.push_back(Rational(1, Integer(1) << k));
    for (int k = 1; k <= 20; ++k)
        deltas.push_back(Rational(Integer(1) << k));
    for (const auto& delta : deltas) {
        Rational slope = steep ? Rational(-1 - delta) : Rational(-1 + delta);
        if (separates(locus, v, slope, above))
            return slope;
    }
    return std::nullopt;
}

StabilityStep classify_top(const GenerationLocus& locus, Variant variant)
{
    auto levels = taxicab_extrema(locus, 2);
    require(!levels.empty(), "locus_exhausted", "the generation locus is empty");
    const NormLevel& top = levels[0];
    require(top.attained, "no_attained_maximum", "the maximal taxi-cab norm is not attained by a generator");

    StabilityStep step;
    // supremum of the norms of the remaining points
    std::optional<Rational> second;
    bool second_attained = true;
    if (levels.size() > 1) {
        second = levels[1].norm;
        second_attained = levels[1].attained;
    } else if (top.norm == 1 && family_for(locus, 0) != nullptr) {
        second = Rational(1); // the i = 0 family approaches norm 1 from below
        second_attained = false;
    }

    const bool unique = top.points.size() == 1 && !top.infinite && (!second || *second < top.norm);
    if (unique) {
        step.point = top.points[0];
        step.classification = "absolute";
        if (second)
            step.epsilon = top.norm - *second;
        step.epsilon_attained = second_attained;
        step.slope = -1;
        return step;
    }

    if (variant == Variant::Left) {
        step.point = top.points.front();
        auto slope = find_slope(locus, step.point, false, false);
        require(slope.has_value(), "no_separating_line", "no separating line of slope > -1 found");
        step.classification = "bounded";
        step.slope = *slope;
    } else {
        const LocusPoint& right = top.points.back();
        require(!(top.infinite && right.x < 1), "no_rightmost_point",
                "the tie has no rightmost point (x-coordinates accumulate at 1)");
        step.point = right;
        auto slope = find_slope(locus, step.point, false, true);
        require(slope.has_value(), "no_separating_line", "no separating line of slope < -1 found");
        step.classification = "truncated";
        step.slope = *slope;
    }
    return step;
}

StabilityStep classify_bottom(const GenerationLocus& locus)
{
    const LocusFamily* best = nullptr;
    for (const auto& f : locus.families)
        if (!f.removed.count(1) && (best == nullptr || f.i < best->i))
            best = &f;
    require(best != nullptr, "locus_exhausted", "no corner left on the vertical axis");

    StabilityStep step;
    step.point = best->member(1);
    step.from_below = true;

    // infimum of the norms of the other points
    std::optional<Rational> second;
    bool second_attained = false;
    auto consider = [&](const Rational& v, bool attained) {
        if (!second || v < *second) {
            second = v;
            second_attained = attained;
        } else if (v == *second) {
            second_attained = second_attained || attained;
        }
    };
    for (const auto& f : locus.families) {
        const int skip = (&f == best) ? 1 : 0;
        if (f.i == 0)
            consider(family_norm(0, f.first_member(skip)), true);
        else if (f.i == 1)
            consider(1, true);
        else
            consider(1, false); // norms decrease to 1
    }
    for (const auto& p : locus.isolated)
        consider(p.norm(), true);
    if (locus.limit_point)
        consider(1, false);

    if (!second || step.point.norm() < *second) {
        step.classification = "absolute";
        if (second)
            step.epsilon = *second - step.point.norm();
        step.epsilon_attained = second_attained;
        step.slope = -1;
        return step;
    }
    if (auto slope = find_slope(locus, step.point, true, true)) {
        step.classification = "bounded";
        step.slope = *slope;
        return step;
    }
    if (auto slope = find_slope(locus, step.point, true, false)) {
        step.classification = "truncated";
        step.slope = *slope;
        return step;
    }
    throw Error("no_separating_line", "no supporting line below the corner found");
}

} // namespace

StabilityStep classify_step(const GenerationLocus& locus, Variant variant)
{
    if (variant == Variant::Bottom)
        return classify_bottom(locus);
    return classify_top(locus, variant);
}

void remove_point(GenerationLocus& locus, const LocusPoint& p)
{
    int n = 0, i = 0;
    if (parse_main(p.label, n, i)) {
        for (auto& f : locus.families)
            if (f.i == i) {
                f.removed.insert(n);
                return;
            }
        throw Error("invalid_point", "no family for " + p.label);
    }
    auto it = std::remove_if(locus.isolated.begin(), locus.isolated.end(),
                             [&](const LocusPoint& q) { return q.x == p.x && q.y == p.y; });
    require(it != locus.isolated.end(), "invalid_point", "point not in the locus: " + p.label);
    locus.isolated.erase(it, locus.isolated.end());
}

StabilityReport iterate_report(const SpaceInput& space, Variant variant, int steps)
{
    require(steps >= 1, "invalid_argument", "at least one step is required");
    StabilityReport rep;
    rep.space = space.name;
    rep.variant = variant;
    rep.i_acyclic = space.i_acyclic;
    GenerationLocus locus = locus_from_space(space);
    for (int s = 0; s < steps; ++s) {
        StabilityStep step = classify_step(locus, variant);
        remove_point(locus, step.point);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

std::vector<std::string> all_factor_labels(const SpaceInput& space, int N)
{
    std::vector<std::string> out;
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= space.d(); ++i)
            if (space.betti[i] != 0)
                out.push_back("main(" + std::to_string(n) + "," + std::to_string(i) + ")");
    for (std::size_t r = 0; r < space.orbits.size(); ++r)
        out.push_back("orbit[" + std::to_string(r) + "]");
    return out;
}

WeightedSeries divide_factors(const SpaceInput& space, const std::vector<std::string>& labels, int N)
{
    WeightedSeries q = e1_series(space, N);
    for (const auto& label : labels) {
        int n = 0, i = 0;
        unsigned r = 0;
        if (parse_main(label, n, i)) {
            if (n > N)
                continue;
            q = series_mul(q, series_exp(series_scale(main_component_argument(n, i, space, N), -1)));
        } else if (std::sscanf(label.c_str(), "orbit[%u]", &r) == 1) {
            q = series_mul(q, series_inverse(orbit_factor(space, r, N)));
        } else {
            throw Error("invalid_factor", "unknown factor label " + label);
        }
    }
    return q;
}

GeneratorBoundCheck verify_generator_bound(const SpaceInput& space, const StabilityReport& report, std::size_t step,
                                           int j, int m, int n_max)
{
    require(step < report.steps.size(), "invalid_argument", "step index out of range");
    std::vector<std::string> labels;
    for (std::size_t s = 0; s <= step; ++s) {
        const auto& p = report.steps[s].point;
        if (p.label.rfind("orbit", 0) == 0) {
            for (std::size_t r = 0; r < space.orbits.size(); ++r)
                labels.push_back("orbit[" + std::to_string(r) + "]");
        } else {
            labels.push_back(p.label);
        }
    }
    WeightedSeries q = divide_factors(space, labels, n_max);

    GeneratorBoundCheck out;
    for (int k = 0; k <= n_max; ++k)
        for (const auto& [key, v] : q.unweighted_row(k))
            if (v < 0) {
                out.quotient_nonnegative = false;
                out.ok = false;
                out.witnesses.push_back("negative dimension at n=" + std::to_string(k));
            }

    const StabilityStep& st = report.steps[step];
    if (st.classification != "absolute" || !st.epsilon)
        return out;
    out.applicable = true;
    out.bound = st.bound(j, m);
    const Rational shift = Rational(m) * st.norm() + j;
    for (int k = 0; k <= n_max; ++k) {
        if (Rational(k) <= out.bound)
            continue;
        Rational diag = st.from_below ? st.norm() * k + shift : st.norm() * k - shift;
        if (!is_integer(diag))
            continue;
        const Integer target = numerator(diag);
        for (const auto& [key, v] : q.unweighted_row(k))
            if (v != 0 && key.first + key.second == target) {
                out.ok = false;
                out.witnesses.push_back("n=" + std::to_string(k) + " (p,q)=(" + std::to_string(key.first) + "," +
                                        std::to_string(key.second) + ") dim " + v.str());
            }
    }
    return out;
}

} // namespace ocs
