#pragma once

#include "oodlab/distribution.hpp"
#include "oodlab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oodlab {

// A total binary classifier over a finite structured domain. Symbolic
// constructors expand to truth tables immediately: dependence analysis,
// shattering and deduplication all need function identity, not
// representation identity.
class Hypothesis {
 public:
  static Hypothesis from_table(FeatureSpacePtr space, std::vector<uint8_t> table,
                               std::string label = "");
  static Hypothesis constant(FeatureSpacePtr space, int value);
  // 1 iff the value index of feature i is >= 1 (the bit itself on {0,1}).
  static Hypothesis dictator(FeatureSpacePtr space, int feature);
  static Hypothesis negated_dictator(FeatureSpacePtr space, int feature);
  // 1 iff value index of feature i >= cutoff.
  static Hypothesis threshold(FeatureSpacePtr space, int feature, int cutoff);
  // XOR of the dictator bits of two features.
  static Hypothesis xor_pair(FeatureSpacePtr space, int feature_a,
                             int feature_b);
  // Outputs the value bit of `value_feature` while the time index is below
  // `switch_index`, and its negation afterwards.
  static Hypothesis grue_switch(FeatureSpacePtr space, int time_feature,
                                int value_feature, int switch_index);
  static Hypothesis negation_of(const Hypothesis& h);

  const FeatureSpace& space() const { return *space_; }
  const FeatureSpacePtr& space_ptr() const { return space_; }
  const std::vector<uint8_t>& table() const { return table_; }
  const std::string& label() const { return label_; }

  int operator()(const StructuredPoint& p) const {
    return table_[point_rank(*space_, p)];
  }
  int at_rank(std::size_t rank) const { return table_[rank]; }

  bool same_function(const Hypothesis& h) const {
    return *space_ == *h.space_ && table_ == h.table_;
  }

 private:
  Hypothesis(FeatureSpacePtr space, std::vector<uint8_t> table,
             std::string label)
      : space_(std::move(space)), table_(std::move(table)),
        label_(std::move(label)) {}

  FeatureSpacePtr space_;
  std::vector<uint8_t> table_;
  std::string label_;
};

// Finite, duplicate-free (as functions) list of hypotheses over one domain.
class HypothesisClass {
 public:
  static HypothesisClass make(FeatureSpacePtr space,
                              std::vector<Hypothesis> members);
  // Every {0,1}-valued function on the domain; domain size capped.
  static HypothesisClass all_functions(FeatureSpacePtr space,
                                       std::size_t cap = 20);

  const FeatureSpace& space() const { return *space_; }
  const FeatureSpacePtr& space_ptr() const { return space_; }
  const std::vector<Hypothesis>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains_function(const Hypothesis& h) const;
  // Deduplicating union over a shared domain.
  static HypothesisClass union_of(const std::vector<HypothesisClass>& parts);

 private:
  HypothesisClass(FeatureSpacePtr space, std::vector<Hypothesis> members)
      : space_(std::move(space)), members_(std::move(members)) {}

  FeatureSpacePtr space_;
  std::vector<Hypothesis> members_;
};

// --- operations -------------------------------------------------------------

// Feature indices on which h depends non-trivially: i is relevant iff two
// points differing only at coordinate i get different outputs.
std::vector<int> feat(const Hypothesis& h);

// The k-sparse lifting: every member of `inner` (over S^k) composed with
// every ordered list of k distinct feature indices from [n], deduplicated
// as functions.
HypothesisClass sparse_lift(const HypothesisClass& inner, int n, int k);

struct ShatterCertificate {
  std::vector<StructuredPoint> points;
  // realizer[L] = member index realizing labeling L; labelings are ordered
  // lexicographically with points[0] as the most significant bit.
  std::vector<std::size_t> realizer;
};

struct ShatterOutcome {
  bool shattered = false;
  std::optional<ShatterCertificate> certificate;      // when shattered
  std::optional<std::vector<uint8_t>> missing_labeling;  // first unrealized
};

ShatterOutcome shatters(const HypothesisClass& cls,
                        const std::vector<StructuredPoint>& points,
                        std::size_t cap = 20);

struct VcResult {
  int dimension = 0;
  // True when the search stopped at the cap with shattered sets still alive;
  // the true dimension is then >= dimension.
  bool capped = false;
  ShatterCertificate witness;  // empty point list when dimension == 0
};

// Exact VC-dimension by size-increasing search over subsets of the domain
// (or of `pool` when given). Only candidate sets whose prefixes shattered
// are extended.
VcResult vc_dimension_exact(const HypothesisClass& cls, int cap = 20);
VcResult vc_dimension_exact(const HypothesisClass& cls, int cap,
                            const std::vector<StructuredPoint>& pool);

struct SauerCheck {
  bool holds = false;
  int vc_dimension = 0;
  BigInt class_size;
  BigInt sauer_sum;  // sum_{i<=VC} C(|domain|, i)
};

SauerCheck sauer_check(const HypothesisClass& cls, int cap = 20);

// C(n, k) in unbounded integers.
BigInt binomial(const BigInt& n, const BigInt& k);

}  // namespace oodlab
