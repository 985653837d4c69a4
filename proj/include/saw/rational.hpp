#ifndef SAW_RATIONAL_HPP
#define SAW_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace saw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q", "p" or "-p/q".
Rational parse_rational(std::string_view token);
std::string to_string(const Rational& r);

}  // namespace saw

#endif  // SAW_RATIONAL_HPP
