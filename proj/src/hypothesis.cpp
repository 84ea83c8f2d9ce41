#include "oodlab/hypothesis.hpp"

#include "oodlab/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace oodlab {

namespace {

void check_feature(const FeatureSpace& space, int feature) {
  if (feature < 0 || feature >= space.n)
    throw ValidationError("invalid-feature-set",
                          "feature index " + std::to_string(feature) +
                              " out of range");
}

int value_bit(std::int32_t value_index) { return value_index >= 1 ? 1 : 0; }

}  // namespace

Hypothesis Hypothesis::from_table(FeatureSpacePtr space,
                                  std::vector<uint8_t> table,
                                  std::string label) {
  const std::size_t expected = space->point_count_checked();
  if (table.size() != expected)
    throw ValidationError("hypothesis",
                          "truth table has " + std::to_string(table.size()) +
                              " entries, domain has " + std::to_string(expected));
  for (auto b : table)
    if (b > 1) throw ValidationError("hypothesis", "outputs must be 0 or 1");
  if (label.empty()) {
    label = "table:";
    for (auto b : table) label += static_cast<char>('0' + b);
  }
  return Hypothesis(std::move(space), std::move(table), std::move(label));
}

namespace {

template <typename Fn>
Hypothesis build_from(FeatureSpacePtr space, std::string label, Fn&& fn) {
  const std::size_t total = space->point_count_checked();
  std::vector<uint8_t> table(total);
  for (std::size_t r = 0; r < total; ++r) {
    const StructuredPoint p = point_from_rank(*space, r);
    table[r] = static_cast<uint8_t>(fn(p) ? 1 : 0);
  }
  return Hypothesis::from_table(std::move(space), std::move(table),
                                std::move(label));
}

}  // namespace

Hypothesis Hypothesis::constant(FeatureSpacePtr space, int value) {
  if (value != 0 && value != 1)
    throw ValidationError("hypothesis", "constant must be 0 or 1");
  return build_from(space, "const" + std::to_string(value),
                    [value](const StructuredPoint&) { return value == 1; });
}

Hypothesis Hypothesis::dictator(FeatureSpacePtr space, int feature) {
  check_feature(*space, feature);
  return build_from(space, "x" + std::to_string(feature),
                    [feature](const StructuredPoint& p) {
                      return value_bit(p.coords[feature]) == 1;
                    });
}

Hypothesis Hypothesis::negated_dictator(FeatureSpacePtr space, int feature) {
  check_feature(*space, feature);
  return build_from(space, "not(x" + std::to_string(feature) + ")",
                    [feature](const StructuredPoint& p) {
                      return value_bit(p.coords[feature]) == 0;
                    });
}

Hypothesis Hypothesis::threshold(FeatureSpacePtr space, int feature,
                                 int cutoff) {
  check_feature(*space, feature);
  return build_from(space,
                    "thr(x" + std::to_string(feature) +
                        ">=" + std::to_string(cutoff) + ")",
                    [feature, cutoff](const StructuredPoint& p) {
                      return p.coords[feature] >= cutoff;
                    });
}

Hypothesis Hypothesis::xor_pair(FeatureSpacePtr space, int feature_a,
                                int feature_b) {
  check_feature(*space, feature_a);
  check_feature(*space, feature_b);
  return build_from(space,
                    "xor(x" + std::to_string(feature_a) + ",x" +
                        std::to_string(feature_b) + ")",
                    [feature_a, feature_b](const StructuredPoint& p) {
                      return value_bit(p.coords[feature_a]) !=
                             value_bit(p.coords[feature_b]);
                    });
}

Hypothesis Hypothesis::grue_switch(FeatureSpacePtr space, int time_feature,
                                   int value_feature, int switch_index) {
  check_feature(*space, time_feature);
  check_feature(*space, value_feature);
  return build_from(
      space,
      "grue(t=x" + std::to_string(time_feature) + ",e=x" +
          std::to_string(value_feature) + ",T=" + std::to_string(switch_index) +
          ")",
      [time_feature, value_feature, switch_index](const StructuredPoint& p) {
        const int e = value_bit(p.coords[value_feature]);
        return p.coords[time_feature] < switch_index ? e == 1 : e == 0;
      });
}

Hypothesis Hypothesis::negation_of(const Hypothesis& h) {
  std::vector<uint8_t> table = h.table();
  for (auto& b : table) b ^= 1;
  return from_table(h.space_ptr(), std::move(table), "not(" + h.label() + ")");
}

HypothesisClass HypothesisClass::make(FeatureSpacePtr space,
                                      std::vector<Hypothesis> members) {
  std::vector<Hypothesis> dedup;
  std::set<std::vector<uint8_t>> seen;
  for (auto& h : members) {
    if (!(h.space() == *space))
      throw ValidationError("domain-mismatch",
                            "class members must share one domain");
    if (seen.insert(h.table()).second) dedup.push_back(std::move(h));
  }
  return HypothesisClass(std::move(space), std::move(dedup));
}

HypothesisClass HypothesisClass::all_functions(FeatureSpacePtr space,
                                               std::size_t cap) {
  const std::size_t total = space->point_count_checked(cap);
  if (total >= 8 * sizeof(std::size_t))
    throw SizeCapError("all_functions over " + std::to_string(total) +
                       " points is not enumerable");
  std::vector<Hypothesis> members;
  members.reserve(std::size_t{1} << total);
  for (std::size_t code = 0; code < (std::size_t{1} << total); ++code) {
    std::vector<uint8_t> table(total);
    for (std::size_t r = 0; r < total; ++r)
      table[r] = static_cast<uint8_t>((code >> r) & 1);
    members.push_back(Hypothesis::from_table(space, std::move(table)));
  }
  return make(space, std::move(members));
}

bool HypothesisClass::contains_function(const Hypothesis& h) const {
  for (const auto& m : members_)
    if (m.same_function(h)) return true;
  return false;
}

HypothesisClass HypothesisClass::union_of(
    const std::vector<HypothesisClass>& parts) {
  if (parts.empty())
    throw ValidationError("hypothesis", "union of zero classes");
  std::vector<Hypothesis> members;
  for (const auto& part : parts)
    for (const auto& h : part.members()) members.push_back(h);
  return make(parts.front().space_ptr(), std::move(members));
}

std::vector<int> feat(const Hypothesis& h) {
  const FeatureSpace& space = h.space();
  const std::size_t total = space.point_count_checked();
  std::vector<int> relevant;
  for (int i = 0; i < space.n; ++i) {
    bool depends = false;
    for (std::size_t r = 0; r < total && !depends; ++r) {
      StructuredPoint p = point_from_rank(space, r);
      const int base = h.at_rank(r);
      const auto original = p.coords[i];
      for (int v = 0; v < space.value_count(); ++v) {
        if (v == original) continue;
        p.coords[i] = v;
        if (h(p) != base) {
          depends = true;
          break;
        }
      }
      p.coords[i] = original;
    }
    if (depends) relevant.push_back(i);
  }
  return relevant;
}

namespace {

void ordered_tuples(int n, int k, std::vector<int>& current,
                    std::vector<char>& used,
                    const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(current.size()) == k) {
    emit(current);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = 1;
    current.push_back(i);
    ordered_tuples(n, k, current, used, emit);
    current.pop_back();
    used[i] = 0;
  }
}

}  // namespace

HypothesisClass sparse_lift(const HypothesisClass& inner, int n, int k) {
  if (k > n)
    throw ValidationError("arity", "sparsity k exceeds feature count n");
  if (inner.space().n != k)
    throw ValidationError("arity", "inner class arity != k");
  auto lifted_space = make_space(n, inner.space().values);
  const std::size_t total = lifted_space->point_count_checked();

  std::vector<Hypothesis> members;
  std::vector<int> current;
  std::vector<char> used(n, 0);
  ordered_tuples(n, k, current, used, [&](const std::vector<int>& idx) {
    for (const auto& h : inner.members()) {
      std::vector<uint8_t> table(total);
      for (std::size_t r = 0; r < total; ++r) {
        const StructuredPoint p = point_from_rank(*lifted_space, r);
        StructuredPoint projected;
        projected.coords.reserve(k);
        for (int i : idx) projected.coords.push_back(p.coords[i]);
        table[r] = static_cast<uint8_t>(h(projected));
      }
      std::string label = "lift(" + h.label() + ";[";
      for (std::size_t j = 0; j < idx.size(); ++j)
        label += (j ? "," : "") + std::to_string(idx[j]);
      label += "])";
      members.push_back(Hypothesis::from_table(lifted_space, std::move(table),
                                               std::move(label)));
    }
  });
  return HypothesisClass::make(lifted_space, std::move(members));
}

namespace {

// Labelings are indexed with points[0] as the most significant bit, so
// increasing index order is lexicographic order on label tuples.
std::size_t restriction_mask(const Hypothesis& h,
                             const std::vector<std::size_t>& ranks) {
  std::size_t mask = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j)
    mask |= static_cast<std::size_t>(h.at_rank(ranks[j]))
            << (ranks.size() - 1 - j);
  return mask;
}

}  // namespace

ShatterOutcome shatters(const HypothesisClass& cls,
                        const std::vector<StructuredPoint>& points,
                        std::size_t cap) {
  if (points.size() > cap)
    throw SizeCapError("shattering check on " + std::to_string(points.size()) +
                       " points exceeds the cap of " + std::to_string(cap));
  std::set<StructuredPoint> dedup(points.begin(), points.end());
  if (dedup.size() != points.size())
    throw ValidationError("points", "shattering points must be distinct");

  std::vector<std::size_t> ranks;
  ranks.reserve(points.size());
  for (const auto& p : points) ranks.push_back(point_rank(cls.space(), p));

  const std::size_t m = points.size();
  const std::size_t labelings = std::size_t{1} << m;
  std::vector<std::size_t> realizer(labelings, SIZE_MAX);
  std::size_t realized = 0;
  for (std::size_t mi = 0; mi < cls.size() && realized < labelings; ++mi) {
    const std::size_t mask = restriction_mask(cls.members()[mi], ranks);
    if (realizer[mask] == SIZE_MAX) {
      realizer[mask] = mi;
      ++realized;
    }
  }

  ShatterOutcome out;
  if (realized == labelings) {
    out.shattered = true;
    out.certificate = ShatterCertificate{points, std::move(realizer)};
    return out;
  }
  for (std::size_t L = 0; L < labelings; ++L) {
    if (realizer[L] != SIZE_MAX) continue;
    std::vector<uint8_t> labeling(m);
    for (std::size_t j = 0; j < m; ++j)
      labeling[j] = static_cast<uint8_t>((L >> (m - 1 - j)) & 1);
    out.missing_labeling = std::move(labeling);
    break;
  }
  return out;
}

namespace {

// Shatter test on domain ranks only; cheaper than the public entry point.
bool ranks_shattered(const HypothesisClass& cls,
                     const std::vector<std::size_t>& ranks) {
  const std::size_t m = ranks.size();
  const std::size_t labelings = std::size_t{1} << m;
  if (cls.size() < labelings) return false;
  std::vector<char> seen(labelings, 0);
  std::size_t realized = 0;
  for (const auto& h : cls.members()) {
    const std::size_t mask = restriction_mask(h, ranks);
    if (!seen[mask]) {
      seen[mask] = 1;
      if (++realized == labelings) return true;
    }
  }
  return false;
}

}  // namespace

VcResult vc_dimension_exact(const HypothesisClass& cls, int cap,
                            const std::vector<StructuredPoint>& pool) {
  std::vector<std::size_t> pool_ranks;
  {
    std::set<std::size_t> dedup;
    for (const auto& p : pool) dedup.insert(point_rank(cls.space(), p));
    pool_ranks.assign(dedup.begin(), dedup.end());
  }

  VcResult result;
  if (cls.size() == 0) {
    // No member realizes even the empty labeling's extension to one point.
    result.dimension = 0;
    return result;
  }

  // Level m holds every shattered m-subset (as ascending rank vectors); a
  // set can only shatter if its prefix without the largest rank does.
  std::vector<std::vector<std::size_t>> level{{}};
  std::vector<std::vector<std::size_t>> last_shattered = level;

  for (int m = 1; m <= cap; ++m) {
    // A class with fewer than 2^m members cannot shatter m points.
    if (cls.size() < (std::size_t{1} << m)) break;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& base : level) {
      const std::size_t start = base.empty() ? 0 : base.back() + 1;
      for (std::size_t r : pool_ranks) {
        if (r < start) continue;
        std::vector<std::size_t> candidate = base;
        candidate.push_back(r);
        if (ranks_shattered(cls, candidate)) next.push_back(std::move(candidate));
      }
    }
    if (next.empty()) break;
    level = std::move(next);
    last_shattered = level;
    result.dimension = m;
    if (m == cap) {
      result.capped = true;
      break;
    }
  }

  // Materialize the certificate for one maximum shattered set.
  const auto& ranks = last_shattered.front();
  std::vector<StructuredPoint> witness_points;
  witness_points.reserve(ranks.size());
  for (auto r : ranks) witness_points.push_back(point_from_rank(cls.space(), r));
  if (!witness_points.empty()) {
    auto outcome = shatters(cls, witness_points,
                            std::max<std::size_t>(witness_points.size(), 1));
    result.witness = std::move(*outcome.certificate);
  } else {
    result.witness = ShatterCertificate{{}, {0}};
  }
  return result;
}

VcResult vc_dimension_exact(const HypothesisClass& cls, int cap) {
  const std::size_t total = cls.space().point_count_checked();
  std::vector<StructuredPoint> pool;
  pool.reserve(total);
  for (std::size_t r = 0; r < total; ++r)
    pool.push_back(point_from_rank(cls.space(), r));
  return vc_dimension_exact(cls, cap, pool);
}

SauerCheck sauer_check(const HypothesisClass& cls, int cap) {
  const VcResult vc = vc_dimension_exact(cls, cap);
  if (vc.capped)
    throw SizeCapError("exact VC-dimension exceeded the cap; Sauer check "
                       "needs the exact value");
  SauerCheck check;
  check.vc_dimension = vc.dimension;
  check.class_size = BigInt(static_cast<unsigned long long>(cls.size()));
  const BigInt domain = cls.space().point_count_exact();
  BigInt sum = 0;
  for (int i = 0; i <= vc.dimension; ++i) sum += binomial(domain, BigInt(i));
  check.sauer_sum = sum;
  check.holds = check.class_size <= check.sauer_sum;
  return check;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt result = 1;
  BigInt kk = k;
  if (k > n - k) kk = n - k;
  for (BigInt i = 0; i < kk; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

}  // namespace oodlab
