#include "advtk/common.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace advtk {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit((unsigned char)s[i])) return false;
    return true;
}

long long to_ll(const std::string& s) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw UsageError("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::out_of_range&) {
        throw CapExceeded("integer out of range: '" + s + "'");
    } catch (const std::invalid_argument&) {
        throw UsageError("not a number: '" + s + "'");
    }
}

} // namespace

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_literal(s))
            throw UsageError("expected an integer or 'a/b' rational, got '" + s + "'");
        return Rat(to_ll(s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!is_integer_literal(a) || !is_integer_literal(b))
        throw UsageError("malformed rational '" + s + "'");
    long long den = to_ll(b);
    if (den == 0) throw UsageError("rational with zero denominator: '" + s + "'");
    return Rat(to_ll(a), den);
}

double parse_number(const std::string& s) {
    if (s.find('/') != std::string::npos || is_integer_literal(s))
        return parse_rational(s).to_double();
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw UsageError("not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("number out of range: '" + s + "'");
    }
}

} // namespace advtk
