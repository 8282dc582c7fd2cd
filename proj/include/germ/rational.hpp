#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "germ/errors.hpp"

namespace germ {

// Exact rational scalar. cpp_rational keeps denominator > 0 and the fraction
// reduced, which is exactly the invariant we need.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_zero(const Rational& r) { return r.is_zero(); }

// Parses "p", "-p" or "p/q". Rejects empty input, junk and zero denominators.
inline Rational parse_rational(std::string_view text, std::size_t offset = 0) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational literal", offset);
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal '" + s + "'", offset);
    }
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

}  // namespace germ
