#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace sdcalc {

/// Exact rational scalar used by the exact-mode coefficient engine.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" into a rational. Throws std::invalid_argument
/// on malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace sdcalc
