#include "oodlab/dyadic.hpp"

#include "oodlab/errors.hpp"

#include <doctest.h>

using namespace oodlab;

TEST_CASE("square wave floor parity") {
  CHECK(square_wave(DyadicRational::make(5, 2)) == 1);   // 1.25 -> floor 1
  CHECK(square_wave(DyadicRational::make(0, 0)) == 0);   // 0 -> floor 0
  CHECK(square_wave(DyadicRational::make(5, 0)) == 1);   // 5.0 -> floor 5
  CHECK(square_wave(DyadicRational::make(10, 2)) == 0);  // 2.5 -> floor 2
  CHECK(square_wave(DyadicRational::make(-5, 2)) == 0);  // -1.25 -> floor -2
  CHECK(square_wave(DyadicRational::make(-3, 1)) == 0);  // -1.5 -> floor -2
  CHECK(square_wave(DyadicRational::make(-1, 0)) == 1);  // -1 -> floor -1
}

TEST_CASE("label words become binary-fraction weights") {
  CHECK(shattering_weight({1, 0, 1}) == DyadicRational::make(5, 3));
  CHECK(shattering_weight({0, 0, 0}) == DyadicRational::make(0, 0));
  CHECK(shattering_weight({1, 1, 1}) == DyadicRational::make(7, 3));
  CHECK(shattering_weight({1}) == DyadicRational::make(1, 1));
  CHECK(shattering_weight({1, 0, 1}).to_rational() == Rat(5, 8));
}

TEST_CASE("weight limits") {
  CHECK_THROWS_AS(shattering_weight({}), ValidationError);
  CHECK_THROWS_AS(shattering_weight(std::vector<uint8_t>(63, 1)),
                  ValidationError);
  CHECK_NOTHROW(shattering_weight(std::vector<uint8_t>(62, 1)));
}

TEST_CASE("shift is exact") {
  const auto w = shattering_weight({1, 0, 1});  // 5/8
  CHECK(w.shifted_left(1) == DyadicRational::make(5, 2));  // 1.25
  CHECK(w.shifted_left(2) == DyadicRational::make(5, 1));  // 2.5
  CHECK(w.shifted_left(3) == DyadicRational::make(5, 0));  // 5
  CHECK(w.shifted_left(4) == DyadicRational::make(10, 0));
}

TEST_CASE("the construction realizes its labels") {
  SUBCASE("worked three-point labeling") {
    // Dots 1.25, 2.5, 5.0 reproduce labels 1, 0, 1.
    CHECK(verify_shatter({1, 0, 1}));
  }
  SUBCASE("single-point labelings") {
    CHECK(verify_shatter({1}));  // 2 * 1/2 = 1 -> odd
    CHECK(verify_shatter({0}));  // 2 * 0 = 0 -> even
  }
  SUBCASE("all labelings at m = 10") {
    for (std::size_t code = 0; code < (1u << 10); ++code) {
      std::vector<uint8_t> labels(10);
      for (int i = 0; i < 10; ++i)
        labels[i] = static_cast<uint8_t>((code >> (9 - i)) & 1);
      CHECK(verify_shatter(labels));
    }
  }
}
