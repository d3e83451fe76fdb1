#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace svlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Renders a rational as "p" or "p/q" with q > 0, no whitespace. */
inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

inline std::string to_string(const Int& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

/** Parses "p", "-p" or "p/q". Rejects anything else (no decimals). */
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int p(text.substr(0, slash));
        Int q(text.substr(slash + 1));
        if (q == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw ParseError("not a rational: '" + text + "'");
    }
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int result = 1;
    for (int i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

inline Int factorial(int n) {
    Int result = 1;
    for (int i = 2; i <= n; ++i) result *= i;
    return result;
}

}  // namespace svlab
