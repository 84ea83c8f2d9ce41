#include "oodlab/rational.hpp"

#include "oodlab/errors.hpp"

#include <cctype>
#include <cmath>

namespace oodlab {

std::string rat_to_string(const Rat& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw ValidationError("rational", "empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      throw ValidationError("rational", "malformed rational literal: " + text);
    BigInt d(den);
    if (d == 0) throw ValidationError("rational", "zero denominator: " + text);
    return Rat(BigInt(num), d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::string whole_digits =
        (whole.empty() || whole == "-" || whole == "+") ? "0" : whole;
    if (!is_integer_token(whole_digits) || frac.empty() ||
        !is_integer_token(frac) || frac[0] == '-' || frac[0] == '+')
      throw ValidationError("rational", "malformed decimal literal: " + text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt whole_part(whole_digits);
    BigInt frac_part(frac);
    BigInt num = whole_part * scale + (neg ? -frac_part : frac_part);
    // "-0.25": whole_part is 0, sign lives on the fraction.
    if (neg && whole_part == 0 && num > 0) num = -num;
    return Rat(num, scale);
  }
  if (!is_integer_token(text))
    throw ValidationError("rational", "malformed rational literal: " + text);
  return Rat(BigInt(text));
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x))
    throw ValidationError("rational", "non-finite value cannot be exact");
  // cpp_rational converts from double exactly, but build it explicitly from
  // the mantissa/exponent decomposition so exactness does not hinge on a
  // library conversion detail.
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double frac = std::frexp(x, &exp);  // x = frac * 2^exp, |frac| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  exp -= 53;
  Rat r(mant);
  BigInt two = 2;
  if (exp >= 0) {
    r *= Rat(boost::multiprecision::pow(two, exp));
  } else {
    r /= Rat(boost::multiprecision::pow(two, -exp));
  }
  return r;
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

BigInt rat_floor(const Rat& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

BigInt int_ceil_div(const BigInt& a, const BigInt& b) {
  BigInt quot = a / b;
  if (a > 0 && quot * b != a) ++quot;
  return quot;
}

}  // namespace oodlab
