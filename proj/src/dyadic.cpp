#include "oodlab/dyadic.hpp"

#include "oodlab/errors.hpp"

namespace oodlab {

DyadicRational DyadicRational::make(std::int64_t num, int exp2) {
  if (exp2 < 0)
    throw ValidationError("parameter", "dyadic exponent must be >= 0");
  // Normalize: strip shared factors of two so equality is structural.
  while (exp2 > 0 && num != 0 && (num & 1) == 0) {
    num >>= 1;
    --exp2;
  }
  if (num == 0) exp2 = 0;
  return DyadicRational{num, exp2};
}

DyadicRational DyadicRational::shifted_left(int shift) const {
  if (shift < 0)
    throw ValidationError("parameter", "shift must be >= 0");
  if (shift <= exp2) return make(num, exp2 - shift);
  const int extra = shift - exp2;
  if (extra >= 62)
    throw ValidationError("parameter", "dyadic shift overflows 64-bit range");
  const std::int64_t limit = std::int64_t{1} << (62 - extra);
  if (num >= limit || num <= -limit)
    throw ValidationError("parameter", "dyadic shift overflows 64-bit range");
  return make(num << extra, 0);
}

std::int64_t DyadicRational::floor() const {
  return num >> exp2;  // arithmetic shift: floor division by 2^exp2
}

Rat DyadicRational::to_rational() const {
  return Rat(BigInt(num), BigInt(1) << exp2);
}

std::string DyadicRational::to_string() const {
  if (exp2 == 0) return std::to_string(num);
  return std::to_string(num) + "/" + (BigInt(1) << exp2).str();
}

int square_wave(const DyadicRational& u) {
  const std::int64_t f = u.floor();
  return static_cast<int>(((f % 2) + 2) % 2);
}

DyadicRational shattering_weight(const std::vector<uint8_t>& labels) {
  if (labels.empty())
    throw ValidationError("parameter", "need at least one label");
  if (labels.size() > 62)
    throw ValidationError("parameter",
                          "more than 62 labels exceeds exact 64-bit width");
  std::int64_t word = 0;
  for (auto bit : labels) {
    if (bit > 1) throw ValidationError("parameter", "labels must be bits");
    word = (word << 1) | bit;
  }
  return DyadicRational::make(word, static_cast<int>(labels.size()));
}

bool verify_shatter(const std::vector<uint8_t>& labels) {
  const DyadicRational weight = shattering_weight(labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    // Evaluation point i has norm 2^(i+1); the dot product against the unit
    // weight vector is the weight scaled by that norm.
    const DyadicRational dot = weight.shifted_left(static_cast<int>(i) + 1);
    if (square_wave(dot) != labels[i]) return false;
  }
  return true;
}

}  // namespace oodlab
