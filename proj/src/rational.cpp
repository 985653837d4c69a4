#include "saw/rational.hpp"

#include "saw/errors.hpp"

namespace saw {

namespace {

BigInt parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
    }
    BigInt v(std::string(s.substr(i)));
    return s.front() == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view token) {
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(token, token));
    const BigInt num = parse_int(token.substr(0, slash), token);
    const BigInt den = parse_int(token.substr(slash + 1), token);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(token) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace saw
