#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubic {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "num/den", or "num" for integers.
std::string rational_string(const Rational& r);
double rational_double(const Rational& r);

}  // namespace cubic
