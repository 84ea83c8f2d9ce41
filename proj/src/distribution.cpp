#include "oodlab/distribution.hpp"

#include "oodlab/errors.hpp"
#include "oodlab/hypothesis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oodlab {

FeatureSpace::FeatureSpace(int n_, std::vector<std::string> values_)
    : n(n_), values(std::move(values_)) {
  if (n < 0) throw ValidationError("feature-space", "n must be >= 0");
  if (values.empty())
    throw ValidationError("feature-space", "value set must be nonempty");
  std::set<std::string> seen(values.begin(), values.end());
  if (seen.size() != values.size())
    throw ValidationError("feature-space", "duplicate feature values");
}

BigInt FeatureSpace::point_count_exact() const {
  return boost::multiprecision::pow(BigInt(value_count()), n);
}

std::size_t FeatureSpace::point_count_checked(std::size_t cap) const {
  const BigInt total = point_count_exact();
  if (total > cap)
    throw SizeCapError("structured domain has " + total.str() +
                       " points, above the table cap of " + std::to_string(cap));
  return total.convert_to<std::size_t>();
}

FeatureSpacePtr make_space(int n, std::vector<std::string> values) {
  return std::make_shared<const FeatureSpace>(n, std::move(values));
}

FeatureSpacePtr make_space_indexed(int n, int value_count) {
  std::vector<std::string> values;
  values.reserve(value_count);
  for (int v = 0; v < value_count; ++v) values.push_back(std::to_string(v));
  return make_space(n, std::move(values));
}

namespace {

void check_point(const FeatureSpace& space, const StructuredPoint& p) {
  if (static_cast<int>(p.coords.size()) != space.n)
    throw ValidationError("point", "point arity does not match the space");
  for (auto c : p.coords)
    if (c < 0 || c >= space.value_count())
      throw ValidationError("point", "coordinate outside the value set");
}

void check_feature_set(const FeatureSpace& space, const std::vector<int>& a) {
  std::set<int> seen;
  for (int i : a) {
    if (i < 0 || i >= space.n)
      throw ValidationError("invalid-feature-set",
                            "feature index " + std::to_string(i) +
                                " out of range for n=" + std::to_string(space.n));
    if (!seen.insert(i).second)
      throw ValidationError("invalid-feature-set",
                            "duplicate feature index " + std::to_string(i));
  }
}

std::vector<int> complement_of(const FeatureSpace& space,
                               const std::vector<int>& a) {
  std::set<int> in_a(a.begin(), a.end());
  std::vector<int> b;
  for (int i = 0; i < space.n; ++i)
    if (!in_a.count(i)) b.push_back(i);
  return b;
}

}  // namespace

std::size_t point_rank(const FeatureSpace& space, const StructuredPoint& p) {
  check_point(space, p);
  std::size_t rank = 0;
  for (int i = 0; i < space.n; ++i)
    rank = rank * space.value_count() + static_cast<std::size_t>(p.coords[i]);
  return rank;
}

StructuredPoint point_from_rank(const FeatureSpace& space, std::size_t rank) {
  StructuredPoint p;
  p.coords.assign(space.n, 0);
  for (int i = space.n - 1; i >= 0; --i) {
    p.coords[i] = static_cast<std::int32_t>(rank % space.value_count());
    rank /= space.value_count();
  }
  return p;
}

FiniteDistribution FiniteDistribution::make(FeatureSpacePtr space,
                                            std::vector<Atom> atoms) {
  if (!space) throw ValidationError("distribution", "missing feature space");
  std::map<StructuredPoint, Rat> merged;
  for (auto& a : atoms) {
    check_point(*space, a.point);
    if (a.p < 0)
      throw ValidationError("distribution", "negative atom probability");
    if (a.p == 0) continue;
    merged[a.point] += a.p;
  }
  Rat total = 0;
  std::vector<Atom> canonical;
  canonical.reserve(merged.size());
  for (auto& [pt, pr] : merged) {
    total += pr;
    canonical.push_back(Atom{pt, pr});
  }
  if (total != 1)
    throw ValidationError("distribution", "probabilities sum to " +
                                              rat_to_string(total) +
                                              ", expected exactly 1");
  return FiniteDistribution(std::move(space), std::move(canonical));
}

FiniteDistribution FiniteDistribution::point_mass(FeatureSpacePtr space,
                                                  StructuredPoint point) {
  return make(std::move(space), {Atom{std::move(point), Rat(1)}});
}

FiniteDistribution FiniteDistribution::uniform_over(
    FeatureSpacePtr space, std::vector<StructuredPoint> support) {
  if (support.empty())
    throw ValidationError("distribution", "uniform over empty support");
  std::set<StructuredPoint> dedup(support.begin(), support.end());
  const Rat p(1, static_cast<unsigned>(dedup.size()));
  std::vector<Atom> atoms;
  for (auto& pt : dedup) atoms.push_back(Atom{pt, p});
  return make(std::move(space), std::move(atoms));
}

Rat FiniteDistribution::mass() const {
  Rat total = 0;
  for (const auto& a : atoms_) total += a.p;
  return total;
}

Rat FiniteDistribution::probability_of(const StructuredPoint& p) const {
  const Atom probe{p, Rat(0)};
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), probe,
      [](const Atom& x, const Atom& y) { return x.point < y.point; });
  if (it != atoms_.end() && it->point == p) return it->p;
  return Rat(0);
}

FiniteDistribution marginalize(const FiniteDistribution& d,
                               const std::vector<int>& feature_set) {
  check_feature_set(d.space(), feature_set);
  std::vector<int> a = feature_set;
  std::sort(a.begin(), a.end());

  // A = empty set: the single empty-tuple atom carries the whole mass.
  auto out_space = make_space(static_cast<int>(a.size()), d.space().values);
  std::map<StructuredPoint, Rat> acc;
  for (const auto& atom : d.atoms()) {
    StructuredPoint restricted;
    restricted.coords.reserve(a.size());
    for (int i : a) restricted.coords.push_back(atom.point.coords[i]);
    acc[restricted] += atom.p;
  }
  std::vector<Atom> atoms;
  for (auto& [pt, pr] : acc) atoms.push_back(Atom{pt, pr});
  return FiniteDistribution::make(out_space, std::move(atoms));
}

FiniteDistribution condition(const FiniteDistribution& d,
                             const std::vector<int>& feature_set,
                             const StructuredPoint& partial) {
  check_feature_set(d.space(), feature_set);
  std::vector<int> a = feature_set;
  std::sort(a.begin(), a.end());
  if (partial.coords.size() != a.size())
    throw ValidationError("point", "partial point arity != |A|");
  const std::vector<int> b = complement_of(d.space(), a);

  Rat event_mass = 0;
  std::map<StructuredPoint, Rat> acc;
  for (const auto& atom : d.atoms()) {
    bool match = true;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (atom.point.coords[a[j]] != partial.coords[j]) {
        match = false;
        break;
      }
    if (!match) continue;
    event_mass += atom.p;
    StructuredPoint rest;
    rest.coords.reserve(b.size());
    for (int i : b) rest.coords.push_back(atom.point.coords[i]);
    acc[rest] += atom.p;
  }
  if (event_mass == 0)
    throw ValidationError("conditioning-on-null",
                          "conditioning event has zero probability");
  std::vector<Atom> atoms;
  for (auto& [pt, pr] : acc) atoms.push_back(Atom{pt, pr / event_mass});
  auto out_space = make_space(static_cast<int>(b.size()), d.space().values);
  return FiniteDistribution::make(out_space, std::move(atoms));
}

FiniteDistribution compose(
    const FeatureSpacePtr& full_space, const std::vector<int>& feature_set,
    const FiniteDistribution& marginal,
    const std::function<std::optional<FiniteDistribution>(
        const StructuredPoint&)>& conditional_family) {
  check_feature_set(*full_space, feature_set);
  std::vector<int> a = feature_set;
  std::sort(a.begin(), a.end());
  const std::vector<int> b = complement_of(*full_space, a);
  if (static_cast<int>(a.size()) != marginal.space().n)
    throw ValidationError("invalid-feature-set",
                          "marginal arity does not match |A|");

  std::vector<Atom> atoms;
  for (const auto& ma : marginal.atoms()) {
    auto cond = conditional_family(ma.point);
    if (!cond)
      throw ValidationError("incomplete-family",
                            "no conditional supplied for a marginal atom");
    if (cond->space().n != static_cast<int>(b.size()))
      throw ValidationError("incomplete-family",
                            "conditional arity does not match |B|");
    for (const auto& ca : cond->atoms()) {
      StructuredPoint joint;
      joint.coords.assign(full_space->n, 0);
      for (std::size_t j = 0; j < a.size(); ++j)
        joint.coords[a[j]] = ma.point.coords[j];
      for (std::size_t j = 0; j < b.size(); ++j)
        joint.coords[b[j]] = ca.point.coords[j];
      atoms.push_back(Atom{std::move(joint), ma.p * ca.p});
    }
  }
  return FiniteDistribution::make(full_space, std::move(atoms));
}

Rat agreement_probability(const FiniteDistribution& d, const Hypothesis& h,
                          const Hypothesis& f) {
  if (!(h.space() == d.space()) || !(f.space() == d.space()))
    throw ValidationError("domain-mismatch",
                          "hypothesis domain does not match the distribution");
  Rat agree = 0;
  for (const auto& atom : d.atoms())
    if (h(atom.point) == f(atom.point)) agree += atom.p;
  return agree;
}

Rat disagreement_probability(const FiniteDistribution& d, const Hypothesis& h,
                             const Hypothesis& f) {
  return Rat(1) - agreement_probability(d, h, f);
}

std::vector<StructuredPoint> sample(const FiniteDistribution& d,
                                    SampleRng& rng, std::size_t m) {
  // Inverse-CDF walk on exact cumulative masses against u/2^64; avoids
  // std::uniform_*_distribution, whose output is not pinned by the standard.
  std::vector<Rat> cumulative;
  cumulative.reserve(d.atoms().size());
  Rat acc = 0;
  for (const auto& a : d.atoms()) {
    acc += a.p;
    cumulative.push_back(acc);
  }
  const Rat two64 = Rat(BigInt(1) << 64);
  std::vector<StructuredPoint> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rat u = Rat(BigInt(rng.next_u64())) / two64;  // in [0, 1)
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx =
        std::min(static_cast<std::size_t>(it - cumulative.begin()),
                 d.atoms().size() - 1);
    out.push_back(d.atoms()[idx].point);
  }
  return out;
}

}  // namespace oodlab
