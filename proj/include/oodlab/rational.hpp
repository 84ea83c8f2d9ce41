#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace oodlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "num/den" (or "num" when den == 1), no whitespace, canonical sign on the
// numerator. This is the wire format used by every JSON document.
std::string rat_to_string(const Rat& q);

// Accepts "a/b", plain integers, and decimal literals ("0.25" -> 1/4).
// Decimal input is converted exactly, never rounded.
Rat rat_from_string(const std::string& text);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double rat_to_double(const Rat& q);

// floor(q) as an exact integer.
BigInt rat_floor(const Rat& q);

// ceil(a/b) for b > 0.
BigInt int_ceil_div(const BigInt& a, const BigInt& b);

}  // namespace oodlab
