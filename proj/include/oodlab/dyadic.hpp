#pragma once

#include "oodlab/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oodlab {

// Exact dyadic value num / 2^exp2. Everything the square-wave shattering
// construction needs closes over this form: label weights are binary
// expansions and the evaluation points are powers of two, so no irrational
// quantity is ever materialized.
struct DyadicRational {
  std::int64_t num = 0;
  int exp2 = 0;  // denominator exponent, >= 0

  static DyadicRational make(std::int64_t num, int exp2);

  // value * 2^shift, exact.
  DyadicRational shifted_left(int shift) const;

  std::int64_t floor() const;
  Rat to_rational() const;
  std::string to_string() const;

  bool operator==(const DyadicRational&) const = default;
};

// 1 iff floor(u) is odd (mathematical floor, so -1.25 floors to -2).
int square_wave(const DyadicRational& u);

// cos(theta) = sum_i labels[i] * 2^-(i+1): the label word read as a binary
// fraction. Labels are limited to 62 bits so all arithmetic stays in int64.
DyadicRational shattering_weight(const std::vector<uint8_t>& labels);

// Replays the construction: the i-th evaluation point has norm 2^(i+1), so
// the dot product is the weight shifted left, and the square wave must
// reproduce label i. True iff every label is reproduced.
bool verify_shatter(const std::vector<uint8_t>& labels);

}  // namespace oodlab
