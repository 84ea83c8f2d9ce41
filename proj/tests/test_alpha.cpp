#include "oodlab/alpha.hpp"

#include "oodlab/errors.hpp"
#include "oodlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace oodlab;

namespace {

// Independent oracle: enumerate every subset of the union support, no
// presolve, no pruning.
Rat naive_alpha(const FiniteDistribution& d, const FiniteDistribution& dp,
                const Rat& epsilon) {
  std::map<StructuredPoint, std::pair<Rat, Rat>> mass;
  for (const auto& a : d.atoms()) mass[a.point].first = a.p;
  for (const auto& a : dp.atoms()) mass[a.point].second = a.p;
  std::vector<std::pair<Rat, Rat>> items;
  items.reserve(mass.size());
  for (auto& [pt, pq] : mass) items.push_back(pq);
  REQUIRE(items.size() <= 20);
  Rat best = 2;
  for (std::size_t code = 0; code < (std::size_t{1} << items.size()); ++code) {
    Rat p = 0, q = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
      if ((code >> i) & 1) {
        p += items[i].first;
        q += items[i].second;
      }
    if (q >= epsilon && p < best) best = p;
  }
  return best;
}

FiniteDistribution dist(const FeatureSpacePtr& space,
                        std::vector<std::pair<int, Rat>> entries) {
  std::vector<Atom> atoms;
  for (auto& [v, p] : entries)
    atoms.push_back(Atom{StructuredPoint{{v}}, p});
  return FiniteDistribution::make(space, std::move(atoms));
}

FiniteDistribution random_dist(const FeatureSpacePtr& space, SampleRng& rng,
                               std::size_t support_max) {
  const std::size_t total = space->point_count_checked();
  const std::size_t support =
      1 + rng.next_below(std::min(support_max, total));
  std::map<std::size_t, unsigned> weights;
  while (weights.size() < support)
    weights[rng.next_below(total)] = 1 + static_cast<unsigned>(rng.next_below(9));
  unsigned total_weight = 0;
  for (auto& [r, w] : weights) total_weight += w;
  std::vector<Atom> atoms;
  for (auto& [r, w] : weights)
    atoms.push_back(Atom{point_from_rank(*space, r), Rat(w, total_weight)});
  return FiniteDistribution::make(space, std::move(atoms));
}

}  // namespace

TEST_CASE("off-support mass forces zero") {
  auto space = make_space_indexed(1, 2);
  const auto d = dist(space, {{0, Rat(1)}});
  const auto dp = dist(space, {{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  const auto result = alpha_exact(AlphaQuery{d, dp, Rat(3, 10)});
  CHECK(result.value == 0);
  // The free off-support atom is the witness.
  REQUIRE(result.witness_event.size() == 1);
  CHECK(result.witness_event[0] == StructuredPoint{{1}});
}

TEST_CASE("uniform self-shift needs two of four atoms") {
  auto space = make_space_indexed(1, 4);
  const auto u = dist(space, {{0, Rat(1, 4)},
                              {1, Rat(1, 4)},
                              {2, Rat(1, 4)},
                              {3, Rat(1, 4)}});
  // Frozen from the subset enumeration oracle: two atoms are needed.
  const auto result = alpha_exact(AlphaQuery{u, u, Rat(3, 10)});
  CHECK(result.value == Rat(1, 2));
  CHECK(naive_alpha(u, u, Rat(3, 10)) == Rat(1, 2));
  CHECK(result.witness_event.size() == 2);
}

TEST_CASE("epsilon zero is the empty event") {
  auto space = make_space_indexed(1, 3);
  SampleRng rng(1);
  const auto d = random_dist(space, rng, 3);
  const auto dp = random_dist(space, rng, 3);
  const auto result = alpha_exact(AlphaQuery{d, dp, Rat(0)});
  CHECK(result.value == 0);
}

TEST_CASE("exact optimizer agrees with the subset-enumeration oracle") {
  SampleRng rng(20250202);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = make_space_indexed(1, 12);
    const auto d = random_dist(space, rng, 12);
    const auto dp = random_dist(space, rng, 12);
    const Rat eps(1 + rng.next_below(10), 10);
    const auto result = alpha_exact(AlphaQuery{d, dp, eps});
    CHECK(result.value == naive_alpha(d, dp, eps));
    // The witness itself certifies optimality conditions.
    Rat wp = 0, wq = 0;
    for (const auto& pt : result.witness_event) {
      wp += d.probability_of(pt);
      wq += dp.probability_of(pt);
    }
    CHECK(wp == result.value);
    CHECK(wq >= eps);
  }
}

TEST_CASE("monotone in epsilon and bounded by one") {
  SampleRng rng(333);
  auto space = make_space_indexed(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_dist(space, rng, 8);
    const auto dp = random_dist(space, rng, 8);
    Rat previous = 0;
    for (int e = 0; e <= 10; ++e) {
      const auto value = alpha_exact(AlphaQuery{d, dp, Rat(e, 10)}).value;
      CHECK(value >= previous);
      CHECK(value <= 1);
      previous = value;
    }
  }
}

TEST_CASE("zero rule covers the whole off-support mass") {
  SampleRng rng(444);
  for (int trial = 0; trial < 50; ++trial) {
    auto space = make_space_indexed(1, 10);
    // D lives on {0..4}, D' puts deliberate mass mu on {5..9}.
    std::vector<Atom> d_atoms, dp_atoms;
    unsigned dw = 0, pw = 0;
    std::vector<unsigned> dws, pws;
    for (int v = 0; v < 5; ++v) {
      dws.push_back(1 + static_cast<unsigned>(rng.next_below(5)));
      dw += dws.back();
    }
    for (int v = 0; v < 10; ++v) {
      pws.push_back(1 + static_cast<unsigned>(rng.next_below(5)));
      pw += pws.back();
    }
    for (int v = 0; v < 5; ++v)
      d_atoms.push_back(Atom{StructuredPoint{{v}}, Rat(dws[v], dw)});
    Rat mu = 0;
    for (int v = 0; v < 10; ++v) {
      const Rat p(pws[v], pw);
      dp_atoms.push_back(Atom{StructuredPoint{{v}}, p});
      if (v >= 5) mu += p;
    }
    const auto d = FiniteDistribution::make(space, d_atoms);
    const auto dp = FiniteDistribution::make(space, dp_atoms);
    CHECK(alpha_exact(AlphaQuery{d, dp, mu}).value == 0);
    CHECK(alpha_exact(AlphaQuery{d, dp, mu / 2}).value == 0);
    // Just past the off-support mass the value must turn positive.
    CHECK(alpha_exact(AlphaQuery{d, dp, mu + Rat(1, 1000)}).value > 0);
  }
}

TEST_CASE("support cap raises a size-cap error") {
  auto space = make_space_indexed(1, 30);
  std::vector<Atom> atoms;
  for (int v = 0; v < 30; ++v)
    atoms.push_back(Atom{StructuredPoint{{v}}, Rat(1, 30)});
  const auto u = FiniteDistribution::make(space, atoms);
  CHECK_THROWS_AS(alpha_exact(AlphaQuery{u, u, Rat(1, 2)}), SizeCapError);
  // A raised cap admits the instance.
  AlphaOptions options;
  options.support_cap = 64;
  CHECK(alpha_exact(AlphaQuery{u, u, Rat(1, 2)}, options).value == Rat(1, 2));
}

TEST_CASE("bounds sandwich the exact value") {
  SampleRng rng(20250203);
  for (int trial = 0; trial < 500; ++trial) {
    auto space = make_space_indexed(1, 10);
    const auto d = random_dist(space, rng, 10);
    const auto dp = random_dist(space, rng, 10);
    const Rat eps(rng.next_below(11), 10);
    const auto exact = alpha_exact(AlphaQuery{d, dp, eps});
    const auto bounds = alpha_bounds(AlphaQuery{d, dp, eps});
    CHECK(bounds.lower <= exact.value);
    CHECK(exact.value <= bounds.upper);
  }
}

TEST_CASE("bounds: identical distributions fill fractionally to epsilon") {
  SampleRng rng(555);
  auto space = make_space_indexed(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = random_dist(space, rng, 9);
    const Rat eps(1 + rng.next_below(10), 10);
    const auto bounds = alpha_bounds(AlphaQuery{d, d, eps});
    CHECK(bounds.lower == eps);
    CHECK(bounds.upper >= eps);
  }
}

TEST_CASE("bounds: disjoint supports below the off-mass give zero") {
  auto space = make_space_indexed(1, 4);
  const auto d = dist(space, {{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  const auto dp = dist(space, {{2, Rat(1, 2)}, {3, Rat(1, 2)}});
  const auto bounds = alpha_bounds(AlphaQuery{d, dp, Rat(1)});
  CHECK(bounds.lower == 0);
  CHECK(bounds.upper == 0);
}

TEST_CASE("closed form for the uniform/exponential pair") {
  // Frozen evaluations of the case split.
  CHECK(alpha_uniform_exponential(1.0, 0.5,
                                  AlphaDirection::kUniformToExponential) ==
        doctest::Approx(0.14170246662789422).epsilon(1e-12));
  CHECK(alpha_uniform_exponential(1.0, std::exp(-1.0) - 1e-9,
                                  AlphaDirection::kUniformToExponential) == 0.0);
  CHECK(alpha_uniform_exponential(2.0, 0.1,
                                  AlphaDirection::kUniformToExponential) == 0.0);
  CHECK(alpha_uniform_exponential(1.0, 1.0,
                                  AlphaDirection::kExponentialToUniform) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(alpha_uniform_exponential(2.0, 0.5,
                                  AlphaDirection::kExponentialToUniform) ==
        doctest::Approx(0.23254415793482963).epsilon(1e-12));
  CHECK_THROWS_AS(
      alpha_uniform_exponential(0.0, 0.5,
                                AlphaDirection::kUniformToExponential),
      ValidationError);
}

TEST_CASE("discretized pair matches the closed form") {
  // Coarse grid here; the acceptance suite runs the full 10^4-bin version.
  const int grid = 2000;
  for (double k : {0.5, 1.0, 2.0}) {
    const auto pair = discretize_uniform_exponential(k, grid);
    CHECK(pair.uniform_part.mass() == 1);
    CHECK(pair.exponential_part.mass() == 1);
    AlphaOptions options;
    options.support_cap = grid + 1;
    for (double eps : {0.2, 0.5, 0.9}) {
      const auto forward = alpha_exact(
          AlphaQuery{pair.uniform_part, pair.exponential_part,
                     rat_from_double(eps)},
          options);
      CHECK(rat_to_double(forward.value) ==
            doctest::Approx(alpha_uniform_exponential(
                                k, eps, AlphaDirection::kUniformToExponential))
                .epsilon(5e-3));
      const auto reverse = alpha_exact(
          AlphaQuery{pair.exponential_part, pair.uniform_part,
                     rat_from_double(eps)},
          options);
      CHECK(rat_to_double(reverse.value) ==
            doctest::Approx(alpha_uniform_exponential(
                                k, eps, AlphaDirection::kExponentialToUniform))
                .epsilon(5e-3));
    }
  }
}

TEST_CASE("contrapositive engine sees no violations") {
  SampleRng rng(20250204);
  SUBCASE("a class containing only the truth passes vacuously") {
    auto space = make_space_indexed(1, 4);
    const auto d = random_dist(space, rng, 4);
    const auto dp = random_dist(space, rng, 4);
    const auto f = Hypothesis::dictator(space, 0);
    const auto cls = HypothesisClass::make(space, {f});
    const auto report =
        verify_alpha_contrapositive(d, dp, f, cls, Rat(1, 10));
    CHECK(report.members_triggered == 0);
    CHECK(report.violations == 0);
  }
  SUBCASE("identical train and test distributions") {
    auto space = make_space_indexed(2, 2);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = random_dist(space, rng, 4);
      const auto f = Hypothesis::dictator(space, 0);
      const auto cls = HypothesisClass::all_functions(space);
      const auto report =
          verify_alpha_contrapositive(d, d, f, cls, Rat(1, 5));
      CHECK(report.violations == 0);
    }
  }
  SUBCASE("random pairs and classes") {
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(2));
      auto space = make_space_indexed(n, n == 1 ? 8 : 3);
      const auto d = random_dist(space, rng, 12);
      const auto dp = random_dist(space, rng, 12);
      std::vector<Hypothesis> members;
      const std::size_t count = 1 + rng.next_below(16);
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<uint8_t> table(space->point_count_checked());
        for (auto& b : table) b = static_cast<uint8_t>(rng.next_below(2));
        members.push_back(Hypothesis::from_table(space, std::move(table)));
      }
      const auto cls = HypothesisClass::make(space, std::move(members));
      const auto f = cls.members()[rng.next_below(cls.size())];
      const Rat eps(1 + rng.next_below(9), 10);
      const auto report = verify_alpha_contrapositive(d, dp, f, cls, eps);
      CHECK(report.violations == 0);
      if (report.members_triggered > 0) CHECK(report.min_margin >= 0);
    }
  }
}
