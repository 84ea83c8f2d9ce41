#pragma once

#include "oodlab/rational.hpp"
#include "oodlab/rng.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oodlab {

// A structured sample space: n features, each ranging over the same ordered
// finite value set. Points are stored as value indices, so the value labels
// are presentation only. n == 0 is the degenerate empty product (one empty
// tuple); it arises as the marginal to the empty feature set, never as a
// user-supplied space.
struct FeatureSpace {
  int n = 0;
  std::vector<std::string> values;

  FeatureSpace() = default;
  FeatureSpace(int n_, std::vector<std::string> values_);

  int value_count() const { return static_cast<int>(values.size()); }

  // |values|^n as an exact integer.
  BigInt point_count_exact() const;
  // Same, as size_t; throws if it does not fit the configured table cap.
  std::size_t point_count_checked(std::size_t cap = (1u << 22)) const;

  bool operator==(const FeatureSpace& other) const {
    return n == other.n && values == other.values;
  }
};

using FeatureSpacePtr = std::shared_ptr<const FeatureSpace>;

FeatureSpacePtr make_space(int n, std::vector<std::string> values);
// Convenience: values "0", "1", ..., "m-1".
FeatureSpacePtr make_space_indexed(int n, int value_count);

struct StructuredPoint {
  std::vector<std::int32_t> coords;

  auto operator<=>(const StructuredPoint&) const = default;
};

// Lexicographic rank of a point within its space (coordinate 0 most
// significant); the canonical index into hypothesis truth tables.
std::size_t point_rank(const FeatureSpace& space, const StructuredPoint& p);
StructuredPoint point_from_rank(const FeatureSpace& space, std::size_t rank);

struct Atom {
  StructuredPoint point;
  Rat p;

  bool operator==(const Atom&) const = default;
};

// Exact finite distribution. Atoms are kept lexicographically sorted,
// duplicate-free and strictly positive, so equality of distributions is
// structural equality.
class FiniteDistribution {
 public:
  // Validates membership, merges duplicate points, drops zero-probability
  // atoms, sorts canonically, and requires exact total mass 1.
  static FiniteDistribution make(FeatureSpacePtr space, std::vector<Atom> atoms);

  static FiniteDistribution point_mass(FeatureSpacePtr space,
                                       StructuredPoint point);
  static FiniteDistribution uniform_over(FeatureSpacePtr space,
                                         std::vector<StructuredPoint> support);

  const FeatureSpace& space() const { return *space_; }
  const FeatureSpacePtr& space_ptr() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  Rat mass() const;
  Rat probability_of(const StructuredPoint& p) const;

  bool operator==(const FiniteDistribution& other) const {
    return *space_ == *other.space_ && atoms_ == other.atoms_;
  }

 private:
  FiniteDistribution(FeatureSpacePtr space, std::vector<Atom> atoms)
      : space_(std::move(space)), atoms_(std::move(atoms)) {}

  FeatureSpacePtr space_;
  std::vector<Atom> atoms_;
};

// --- operations -------------------------------------------------------------

// Restriction of D to the feature set A (indices ascending in the result).
FiniteDistribution marginalize(const FiniteDistribution& d,
                               const std::vector<int>& feature_set);

// Conditional of D on {x_A = partial}, as a distribution over the
// complementary features B = [n] - A (ascending order).
FiniteDistribution condition(const FiniteDistribution& d,
                             const std::vector<int>& feature_set,
                             const StructuredPoint& partial);

// Joint from a marginal on A and a conditional family on B = [n] - A.
// The family is consulted once per marginal atom; a missing entry is an
// incomplete-family error.
FiniteDistribution compose(
    const FeatureSpacePtr& full_space, const std::vector<int>& feature_set,
    const FiniteDistribution& marginal,
    const std::function<std::optional<FiniteDistribution>(
        const StructuredPoint&)>& conditional_family);

class Hypothesis;  // hypothesis.hpp

// Exact Pr_{x~D}[h(x) = f(x)].
Rat agreement_probability(const FiniteDistribution& d, const Hypothesis& h,
                          const Hypothesis& f);
// Exact Pr_{x~D}[h(x) != f(x)].
Rat disagreement_probability(const FiniteDistribution& d, const Hypothesis& h,
                             const Hypothesis& f);

// m i.i.d. draws; deterministic for a fixed generator state.
std::vector<StructuredPoint> sample(const FiniteDistribution& d,
                                    SampleRng& rng, std::size_t m);

}  // namespace oodlab
