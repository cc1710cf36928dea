#include "ocs/rational.hpp"
#include "ocs/errors.hpp"

#include <limits>

namespace ocs {

Rational parse_rational(const std::string& s)
{
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        require(q != 0, "invalid_rational", "zero denominator in '" + s + "'");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw Error("invalid_rational", "cannot parse rational '" + s + "'");
    }
}

std::int64_t to_int64(const Integer& z)
{
    require(z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max(),
            "overflow", "integer does not fit in 64 bits: " + z.str());
    return static_cast<std::int64_t>(z);
}

std::int64_t to_int64(const Rational& r)
{
    require(is_integer(r), "non_integer", "expected an integer, got " + to_pq(r));
    return to_int64(numerator(r));
}

Integer factorial(int n)
{
    Integer f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace ocs
