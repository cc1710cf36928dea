#include "ocs/symmetric.hpp"
#include "ocs/errors.hpp"
#include "ocs/homology.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>

namespace ocs {

void validate_partition(const Partition& p)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        require(p[i] > 0, "invalid_partition", "partition parts must be positive");
        require(i == 0 || p[i] <= p[i - 1], "invalid_partition", "partition parts must be weakly decreasing");
    }
}

int partition_size(const Partition& p)
{
    int s = 0;
    for (int x : p)
        s += x;
    return s;
}

std::string to_string(const Partition& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

namespace {

void partitions_rec(int m, int max_part, Partition& cur, std::vector<Partition>& out)
{
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(m, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions_rec(m - k, k, cur, out);
        cur.pop_back();
    }
}

std::int64_t mn_rec(std::vector<int> beta, const Partition& mu, std::size_t idx)
{
    if (idx == mu.size())
        return 1;
    const int k = mu[idx];
    std::set<int> bs(beta.begin(), beta.end());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int b = beta[i];
        if (b - k < 0 || bs.count(b - k))
            continue;
        int between = 0;
        for (int c : beta)
            if (c > b - k && c < b)
                ++between;
        std::vector<int> next = beta;
        next[i] = b - k;
        const std::int64_t v = mn_rec(next, mu, idx + 1);
        total += (between % 2 ? -v : v);
    }
    return total;
}

} // namespace

std::vector<Partition> partitions_of(int m)
{
    require(m >= 0, "invalid_argument", "negative size");
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(m, m, cur, out);
    return out;
}

Integer centralizer_order(const Partition& mu)
{
    std::map<int, int> mult;
    for (int k : mu)
        ++mult[k];
    Integer z = 1;
    for (auto [k, c] : mult) {
        for (int i = 0; i < c; ++i)
            z *= k;
        z *= factorial(c);
    }
    return z;
}

Integer class_size(const Partition& mu)
{
    return factorial(partition_size(mu)) / centralizer_order(mu);
}

std::vector<int> cycle_permutation(const Partition& mu)
{
    validate_partition(mu);
    std::vector<int> perm(partition_size(mu));
    int start = 0;
    for (int k : mu) {
        for (int i = 0; i < k; ++i)
            perm[start + i] = start + (i + 1) % k;
        start += k;
    }
    return perm;
}

Partition cycle_type(const std::vector<int>& perm)
{
    std::vector<bool> seen(perm.size(), false);
    Partition mu;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        mu.push_back(len);
    }
    std::sort(mu.rbegin(), mu.rend());
    return mu;
}

std::int64_t mn_character(const Partition& lambda, const Partition& mu)
{
    validate_partition(lambda);
    validate_partition(mu);
    require(partition_size(lambda) == partition_size(mu), "size_mismatch", "|lambda| must equal |mu|");
    const int l = static_cast<int>(lambda.size());
    std::vector<int> beta(l);
    for (int i = 0; i < l; ++i)
        beta[i] = lambda[i] + (l - 1 - i);
    return mn_rec(beta, mu, 0);
}

Integer hook_dimension(const Partition& lambda)
{
    validate_partition(lambda);
    Integer hooks = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int leg = 0;
            for (std::size_t r = i + 1; r < lambda.size() && lambda[r] > j; ++r)
                ++leg;
            hooks *= lambda[i] - j - 1 + leg + 1;
        }
    return factorial(partition_size(lambda)) / hooks;
}

const CharacterTable& character_table(int m)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CharacterTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) {
        auto t = std::make_unique<CharacterTable>();
        t->m = m;
        t->partitions = partitions_of(m);
        for (const auto& lambda : t->partitions) {
            std::vector<std::int64_t> row;
            for (const auto& mu : t->partitions)
                row.push_back(mn_character(lambda, mu));
            t->values.push_back(std::move(row));
        }
        slot = std::move(t);
    }
    return *slot;
}

Rational ClassFunction::operator()(const Partition& mu) const
{
    auto it = values.find(mu);
    require(it != values.end(), "invalid_class", "class function undefined at " + to_string(mu));
    return it->second;
}

ClassFunction irreducible_character(const Partition& lambda)
{
    ClassFunction f;
    f.m = partition_size(lambda);
    for (const auto& mu : partitions_of(f.m))
        f.values[mu] = mn_character(lambda, mu);
    return f;
}

Rational inner_product(const ClassFunction& f, const ClassFunction& g)
{
    require(f.m == g.m, "size_mismatch", "class functions of different degrees");
    Rational s = 0;
    for (const auto& mu : partitions_of(f.m))
        s += Rational(class_size(mu)) * f(mu) * g(mu);
    return s / Rational(factorial(f.m));
}

std::map<Partition, Integer> decompose(const ClassFunction& cf)
{
    const CharacterTable& t = character_table(cf.m);
    for (const auto& mu : t.partitions)
        require(cf.values.count(mu), "invalid_class_function", "class function undefined at " + to_string(mu));
    std::map<Partition, Integer> out;
    const Integer order = factorial(cf.m);
    for (std::size_t a = 0; a < t.partitions.size(); ++a) {
        Rational s = 0;
        for (std::size_t b = 0; b < t.partitions.size(); ++b)
            s += Rational(class_size(t.partitions[b])) * cf(t.partitions[b]) * t.values[a][b];
        s /= Rational(order);
        require(is_integer(s), "not_a_character",
                "non-integer multiplicity " + to_pq(s) + " of " + to_string(t.partitions[a]));
        if (s != 0)
            out[t.partitions[a]] = numerator(s);
    }
    // reconstruction
    for (std::size_t b = 0; b < t.partitions.size(); ++b) {
        Rational v = 0;
        for (std::size_t a = 0; a < t.partitions.size(); ++a) {
            auto it = out.find(t.partitions[a]);
            if (it != out.end())
                v += Rational(it->second) * t.values[a][b];
        }
        require(v == cf(t.partitions[b]), "not_a_character", "class function is not in the span of the irreducibles");
    }
    return out;
}

Partition pad_partition(const Partition& lambda, int m)
{
    validate_partition(lambda);
    const int top = m - partition_size(lambda);
    require(top >= (lambda.empty() ? 0 : lambda[0]), "pad_too_small",
            "cannot pad " + to_string(lambda) + " to size " + std::to_string(m));
    Partition out;
    if (top > 0)
        out.push_back(top);
    out.insert(out.end(), lambda.begin(), lambda.end());
    return out;
}

Partition strip_partition(const Partition& lambda)
{
    validate_partition(lambda);
    if (lambda.empty())
        return {};
    return Partition(lambda.begin() + 1, lambda.end());
}

StableMultiplicityReport stable_multiplicity_check(const std::map<int, ClassFunction>& sequence,
                                                   std::optional<Rational> size_bound)
{
    require(!sequence.empty(), "invalid_argument", "empty character sequence");
    StableMultiplicityReport rep;
    rep.size_bound = size_bound;
    const std::map<Partition, Integer>* prev = nullptr;
    for (const auto& [n, cf] : sequence) {
        require(cf.m == n, "size_mismatch", "character for n = " + std::to_string(n) + " has degree " + std::to_string(cf.m));
        auto dec = decompose(cf);
        std::map<Partition, Integer> names;
        for (const auto& [lambda, mult] : dec) {
            Partition name = strip_partition(lambda);
            names[name] += mult;
            if (size_bound && Rational(partition_size(name)) > *size_bound)
                rep.size_bound_ok = false;
        }
        rep.decompositions[n] = std::move(dec);
        auto& stored = rep.names[n] = std::move(names);
        if (prev && *prev != stored && rep.stable) {
            rep.stable = false;
            rep.first_violation = n;
        }
        prev = &stored;
    }
    rep.stable_names = *prev;
    return rep;
}

std::int64_t whitney_trace(const Poset& p, const std::vector<int>& perm, int rank)
{
    std::int64_t total = 0;
    for (int x = 0; x < p.size(); ++x) {
        if (perm[x] != x || p.rank(x) != rank)
            continue;
        if (rank == 0) {
            total += 1;
            continue;
        }
        const auto elems = lower_interval_elements(p, x);
        std::vector<int> inner;
        for (int e : elems)
            if (e != x && p.rank(e) > 0)
                inner.push_back(e);
        std::vector<int> pos(p.size(), -1);
        for (std::size_t i = 0; i < inner.size(); ++i)
            pos[inner[i]] = static_cast<int>(i);
        std::vector<int> restricted(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i)
            restricted[i] = pos[perm[inner[i]]];
        const Poset part = induced_subposet(p, inner);
        const std::int64_t l = lefschetz_character(part, restricted);
        total += (rank % 2 ? -l : l);
    }
    return total;
}

ClassFunction whitney_character(const DowlingPoset& dp, int rank)
{
    const WhitneyHomology wh = whitney_homology(dp.poset);
    require(wh.concentrated, "not_concentrated", "Whitney homology is not concentrated; the character would be virtual");
    const int n = dp.spec.n;
    ClassFunction f;
    f.m = n;
    for (const auto& mu : partitions_of(n)) {
        WreathElement w = wreath_identity(dp.spec.group(), n);
        w.perm = cycle_permutation(mu);
        f.values[mu] = whitney_trace(dp.poset, wreath_permutation(dp, w), rank);
    }
    return f;
}

} // namespace ocs
