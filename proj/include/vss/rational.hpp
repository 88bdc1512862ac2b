#ifndef VSS_RATIONAL_HPP
#define VSS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace vss {

// Exact arbitrary-precision rational scalar.  Always stored in lowest terms
// with a positive denominator; no rounding anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

// Parses "num", "-num" or "num/den" (den > 0 after normalization).
inline Rational rational_from_string(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("rational_from_string: empty string");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("rational_from_string: bad literal '" + s + "'");
    }
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

} // namespace vss

#endif // VSS_RATIONAL_HPP
