#ifndef LOCDET_RATIONAL_HPP
#define LOCDET_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace locdet {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(a, b) with the vanishing convention: 0 whenever b < 0 or b > a.
// Requires a >= 0.
Int binomial(long long a, long long b);

// q^e for e >= 0.
Rational rational_pow(const Rational& q, long long e);

// Accepts "p/q" or "p", optional leading sign on the numerator.
Rational parse_rational(const std::string& text);

// Lowest terms, sign on the numerator; "/1" is omitted.
std::string rational_to_string(const Rational& q);

}  // namespace locdet

#endif
