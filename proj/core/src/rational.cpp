#include "locdet/rational.hpp"

#include <stdexcept>

namespace locdet {

Int binomial(long long a, long long b) {
    if (a < 0) throw std::invalid_argument("binomial: negative upper index");
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    Int result = 1;
    for (long long k = 1; k <= b; ++k) {
        result *= (a - b + k);
        result /= k;
    }
    return result;
}

Rational rational_pow(const Rational& q, long long e) {
    if (e < 0) throw std::invalid_argument("rational_pow: negative exponent");
    Rational result = 1;
    Rational base = q;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    }
}

std::string rational_to_string(const Rational& q) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace locdet
