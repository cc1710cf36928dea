#include "ocs/series.hpp"
#include "ocs/errors.hpp"

namespace ocs {

namespace {

using Poly = WeightedSeries::Poly;

void check_compatible(const WeightedSeries& a, const WeightedSeries& b)
{
    require(a.weight() == b.weight(), "series_mismatch", "series have different weights");
    require(a.truncation() == b.truncation(), "series_mismatch", "series have different truncations");
}

void poly_add_product(Poly& out, const Poly& a, const Poly& b, const Rational& scale)
{
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
            auto& slot = out[k];
            slot += scale * ca * cb;
            if (slot == 0)
                out.erase(k);
        }
}

bool is_constant_one(const Poly& p)
{
    return p.size() == 1 && p.begin()->first == std::pair<int, int>{0, 0} && p.begin()->second == 1;
}

} // namespace

WeightedSeries::WeightedSeries(int truncation, int weight) : N_(truncation), w_(weight)
{
    require(truncation >= 0, "invalid_series", "negative truncation");
    require(weight >= 1, "invalid_series", "weight must be positive");
    terms_.assign(N_ + 1, {});
}

WeightedSeries WeightedSeries::one(int truncation, int weight)
{
    WeightedSeries s(truncation, weight);
    s.add_term(0, 0, 0, 1);
    return s;
}

Rational WeightedSeries::coeff(int n, int p, int q) const
{
    if (n < 0 || n > N_)
        return 0;
    auto it = terms_[n].find({p, q});
    return it == terms_[n].end() ? Rational(0) : it->second;
}

void WeightedSeries::add_term(int n, int p, int q, const Rational& c)
{
    require(n >= 0, "invalid_series", "negative t-degree");
    if (n > N_ || c == 0)
        return;
    auto& slot = terms_[n][{p, q}];
    slot += c;
    if (slot == 0)
        terms_[n].erase({p, q});
}

Integer WeightedSeries::unweighted(int n, int p, int q) const
{
    Rational v = coeff(n, p, q) * Rational(boost::multiprecision::pow(Integer(w_), n) * factorial(n));
    require(is_integer(v), "non_integer_dimension",
            "non-integer dimension " + to_pq(v) + " at t^" + std::to_string(n));
    return numerator(v);
}

std::map<std::pair<int, int>, Integer> WeightedSeries::unweighted_row(int n) const
{
    std::map<std::pair<int, int>, Integer> row;
    for (const auto& [k, c] : terms_.at(n)) {
        (void)c;
        row[k] = unweighted(n, k.first, k.second);
    }
    return row;
}

WeightedSeries series_add(const WeightedSeries& a, const WeightedSeries& b)
{
    check_compatible(a, b);
    WeightedSeries out = a;
    for (int n = 0; n <= b.truncation(); ++n)
        for (const auto& [k, c] : b.terms(n))
            out.add_term(n, k.first, k.second, c);
    return out;
}

WeightedSeries series_scale(const WeightedSeries& a, const Rational& c)
{
    WeightedSeries out(a.truncation(), a.weight());
    for (int n = 0; n <= a.truncation(); ++n)
        for (const auto& [k, v] : a.terms(n))
            out.add_term(n, k.first, k.second, v * c);
    return out;
}

WeightedSeries series_sub(const WeightedSeries& a, const WeightedSeries& b)
{
    return series_add(a, series_scale(b, -1));
}

WeightedSeries series_mul(const WeightedSeries& a, const WeightedSeries& b)
{
    check_compatible(a, b);
    const int N = a.truncation();
    WeightedSeries out(N, a.weight());
    for (int n = 0; n <= N; ++n) {
        Poly acc;
        for (int i = 0; i <= n; ++i)
            poly_add_product(acc, a.terms(i), b.terms(n - i), 1);
        for (const auto& [k, c] : acc)
            out.add_term(n, k.first, k.second, c);
    }
    return out;
}

WeightedSeries series_exp(const WeightedSeries& arg)
{
    require(arg.terms(0).empty(), "nonzero_constant", "exp argument has a nonzero constant term");
    const int N = arg.truncation();
    // F' = A' F, so n F_n = sum_{k=1}^{n} k A_k F_{n-k}
    std::vector<Poly> F(N + 1);
    F[0][{0, 0}] = 1;
    for (int n = 1; n <= N; ++n) {
        Poly acc;
        for (int k = 1; k <= n; ++k)
            poly_add_product(acc, arg.terms(k), F[n - k], Rational(k, n));
        F[n] = std::move(acc);
    }
    WeightedSeries out(N, arg.weight());
    for (int n = 0; n <= N; ++n)
        for (const auto& [k, c] : F[n])
            out.add_term(n, k.first, k.second, c);
    return out;
}

WeightedSeries series_log(const WeightedSeries& a)
{
    require(is_constant_one(a.terms(0)), "bad_constant", "log needs constant term 1");
    const int N = a.truncation();
    // n L_n = n B_n - sum_{k=1}^{n-1} k L_k B_{n-k}
    std::vector<Poly> L(N + 1);
    for (int n = 1; n <= N; ++n) {
        Poly acc = a.terms(n);
        for (int k = 1; k < n; ++k)
            poly_add_product(acc, L[k], a.terms(n - k), Rational(-k, n));
        L[n] = std::move(acc);
    }
    WeightedSeries out(N, a.weight());
    for (int n = 1; n <= N; ++n)
        for (const auto& [k, c] : L[n])
            out.add_term(n, k.first, k.second, c);
    return out;
}

WeightedSeries series_inverse(const WeightedSeries& a)
{
    require(is_constant_one(a.terms(0)), "bad_constant", "inverse needs constant term 1");
    const int N = a.truncation();
    std::vector<Poly> C(N + 1);
    C[0][{0, 0}] = 1;
    for (int n = 1; n <= N; ++n) {
        Poly acc;
        for (int k = 1; k <= n; ++k)
            poly_add_product(acc, a.terms(k), C[n - k], -1);
        C[n] = std::move(acc);
    }
    WeightedSeries out(N, a.weight());
    for (int n = 0; n <= N; ++n)
        for (const auto& [k, c] : C[n])
            out.add_term(n, k.first, k.second, c);
    return out;
}

WeightedSeries series_specialize(const WeightedSeries& a, const Rational& x, const Rational& y)
{
    WeightedSeries out(a.truncation(), a.weight());
    for (int n = 0; n <= a.truncation(); ++n)
        for (const auto& [k, c] : a.terms(n)) {
            Rational v = c;
            for (int i = 0; i < k.first; ++i)
                v *= x;
            for (int i = 0; i < k.second; ++i)
                v *= y;
            out.add_term(n, 0, 0, v);
        }
    return out;
}

} // namespace ocs
