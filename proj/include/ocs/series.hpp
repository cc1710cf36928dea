#pragma once

#include "ocs/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ocs {

// Truncated power series in t with coefficients polynomials in x and y.
// The stored coefficient of t^n x^p y^q is dim / (w^n n!), where w is the
// group order.
class WeightedSeries {
public:
    using Poly = std::map<std::pair<int, int>, Rational>; // (p, q) -> coefficient

    explicit WeightedSeries(int truncation = 8, int weight = 1);
    static WeightedSeries one(int truncation, int weight);

    int truncation() const { return N_; }
    int weight() const { return w_; }

    const Poly& terms(int n) const { return terms_.at(n); }
    Rational coeff(int n, int p, int q) const;
    void add_term(int n, int p, int q, const Rational& c); // ignored beyond the truncation

    bool operator==(const WeightedSeries& o) const
    {
        return N_ == o.N_ && w_ == o.w_ && terms_ == o.terms_;
    }

    // coeff * w^n * n!; throws if not an integer
    Integer unweighted(int n, int p, int q) const;
    std::map<std::pair<int, int>, Integer> unweighted_row(int n) const;

private:
    int N_;
    int w_;
    std::vector<Poly> terms_;
};

WeightedSeries series_add(const WeightedSeries& a, const WeightedSeries& b);
WeightedSeries series_sub(const WeightedSeries& a, const WeightedSeries& b);
WeightedSeries series_scale(const WeightedSeries& a, const Rational& c);
WeightedSeries series_mul(const WeightedSeries& a, const WeightedSeries& b);

// Requires a zero constant term.
WeightedSeries series_exp(const WeightedSeries& arg);
// Requires constant term exactly 1.
WeightedSeries series_log(const WeightedSeries& a);
WeightedSeries series_inverse(const WeightedSeries& a);

// Substitutes numbers for x and y; the result only has (0, 0) terms.
WeightedSeries series_specialize(const WeightedSeries& a, const Rational& x, const Rational& y);

} // namespace ocs
