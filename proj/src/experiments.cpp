#include "oodlab/experiments.hpp"

#include "oodlab/bounds.hpp"
#include "oodlab/errors.hpp"

#include <boost/math/distributions/beta.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace oodlab {

namespace {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<LabeledSample> label_with(const Hypothesis& truth,
                                      const std::vector<StructuredPoint>& pts) {
  std::vector<LabeledSample> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(LabeledSample{p, truth(p)});
  return out;
}

std::vector<std::size_t> consistent_set(const HypothesisClass& cls,
                                        const std::vector<LabeledSample>& samples) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& h = cls.members()[i];
    bool ok = true;
    for (const auto& s : samples)
      if (h(s.point) != s.label) {
        ok = false;
        break;
      }
    if (ok) out.push_back(i);
  }
  return out;
}

WorstConsistent worst_consistent_ood_error(
    const HypothesisClass& cls, const std::vector<LabeledSample>& samples,
    const Hypothesis& truth, const FiniteDistribution& d_test) {
  const auto indices = consistent_set(cls, samples);
  if (indices.empty())
    throw ValidationError("no-consistent-member",
                          "no class member is consistent with the samples");
  WorstConsistent result;
  result.consistent_count = indices.size();
  result.worst = -1;
  result.best = 2;
  for (auto i : indices) {
    const Rat err = disagreement_probability(d_test, cls.members()[i], truth);
    if (err > result.worst) {
      result.worst = err;
      result.worst_index = i;
    }
    if (err < result.best) result.best = err;
  }
  return result;
}

// --- scenarios ---------------------------------------------------------------

namespace {

std::vector<StructuredPoint> grid_points(int lo_time, int hi_time) {
  std::vector<StructuredPoint> pts;
  for (int t = lo_time; t < hi_time; ++t)
    for (int e = 0; e < 2; ++e)
      pts.push_back(StructuredPoint{{t, e}});
  return pts;
}

}  // namespace

namespace {

int single_feature_family_vc(int value_count) {
  auto value_space = make_space_indexed(1, value_count);
  const auto inner = HypothesisClass::make(
      value_space, {Hypothesis::constant(value_space, 0),
                    Hypothesis::constant(value_space, 1),
                    Hypothesis::dictator(value_space, 0),
                    Hypothesis::negated_dictator(value_space, 0)});
  return vc_dimension_exact(inner).dimension;
}

}  // namespace

ContrastScenario make_grue_scenario(int time_grid, int switch_index,
                                    int test_min_time) {
  if (time_grid < 2)
    throw ValidationError("parameter", "time grid needs at least 2 values");
  if (switch_index < 1 || switch_index > time_grid - 1)
    throw ValidationError("parameter",
                          "switch index must lie in [1, time_grid - 1]");
  if (test_min_time < 0) test_min_time = switch_index;
  if (test_min_time > time_grid - 1)
    throw ValidationError("parameter", "test support would be empty");

  auto space = make_space_indexed(2, time_grid);
  auto truth = Hypothesis::dictator(space, 1);

  std::vector<Hypothesis> sparse{
      Hypothesis::constant(space, 0), Hypothesis::constant(space, 1),
      Hypothesis::dictator(space, 1), Hypothesis::negated_dictator(space, 1)};
  std::vector<Hypothesis> full = sparse;
  full.push_back(Hypothesis::xor_pair(space, 0, 1));
  for (int t = 1; t < time_grid; ++t)
    full.push_back(Hypothesis::grue_switch(space, 0, 1, t));

  auto canonical = label_with(
      truth, {StructuredPoint{{0, 0}}, StructuredPoint{{0, 1}}});

  return ContrastScenario{
      "grue",
      space,
      FiniteDistribution::uniform_over(space, grid_points(0, switch_index)),
      FiniteDistribution::uniform_over(space,
                                       grid_points(test_min_time, time_grid)),
      std::move(truth),
      HypothesisClass::make(space, std::move(full)),
      HypothesisClass::make(space, std::move(sparse)),
      std::move(canonical),
      test_min_time < switch_index,
      single_feature_family_vc(time_grid)};
}

ContrastScenario make_xor_pixel_scenario() {
  auto space = make_space_indexed(2, 2);
  auto truth = Hypothesis::dictator(space, 0);

  std::vector<Hypothesis> sparse{
      Hypothesis::constant(space, 0),  Hypothesis::constant(space, 1),
      Hypothesis::dictator(space, 0),  Hypothesis::negated_dictator(space, 0),
      Hypothesis::dictator(space, 1),  Hypothesis::negated_dictator(space, 1)};
  std::vector<Hypothesis> full = sparse;
  full.push_back(Hypothesis::xor_pair(space, 0, 1));

  auto canonical = label_with(
      truth, {StructuredPoint{{0, 0}}, StructuredPoint{{1, 0}}});

  return ContrastScenario{
      "xor_pixel",
      space,
      FiniteDistribution::uniform_over(
          space, {StructuredPoint{{0, 0}}, StructuredPoint{{1, 0}}}),
      FiniteDistribution::uniform_over(
          space, {StructuredPoint{{0, 1}}, StructuredPoint{{1, 1}}}),
      std::move(truth),
      HypothesisClass::make(space, std::move(full)),
      HypothesisClass::make(space, std::move(sparse)),
      std::move(canonical),
      false,
      single_feature_family_vc(2)};
}

// --- nested-prefix trial machinery -------------------------------------------

namespace {

struct PrefixErrors {
  std::vector<Rat> worst;  // one entry per m-grid position
  std::vector<Rat> best;
};

// Per-trial worst and best consistent test error at each m of the grid,
// using one nested draw of max(m_grid) samples: larger prefixes only shrink
// the consistent set, so the per-trial worst curve is non-increasing by
// construction.
PrefixErrors prefix_errors(const HypothesisClass& cls, const Hypothesis& truth,
                           const FiniteDistribution& test,
                           const std::vector<LabeledSample>& samples,
                           const std::vector<std::size_t>& m_grid) {
  const std::size_t member_count = cls.size();
  std::vector<std::size_t> kill_index(member_count, SIZE_MAX);
  std::vector<Rat> test_err(member_count);
  for (std::size_t i = 0; i < member_count; ++i) {
    const auto& h = cls.members()[i];
    test_err[i] = disagreement_probability(test, h, truth);
    for (std::size_t j = 0; j < samples.size(); ++j)
      if (h(samples[j].point) != samples[j].label) {
        kill_index[i] = j;
        break;
      }
  }
  PrefixErrors out;
  out.worst.reserve(m_grid.size());
  out.best.reserve(m_grid.size());
  for (const std::size_t m : m_grid) {
    Rat worst = -1;
    Rat best = 2;
    for (std::size_t i = 0; i < member_count; ++i) {
      if (kill_index[i] < m) continue;
      if (test_err[i] > worst) worst = test_err[i];
      if (test_err[i] < best) best = test_err[i];
    }
    if (worst < 0)
      throw ValidationError("no-consistent-member",
                            "consistent set emptied in a realizable run");
    out.worst.push_back(worst);
    out.best.push_back(best);
  }
  return out;
}

ContrastScenario scenario_from_config(const std::string& name, int time_grid,
                                      int switch_index, int test_min_time) {
  if (name == "grue")
    return make_grue_scenario(time_grid, switch_index, test_min_time);
  if (name == "xor_pixel") return make_xor_pixel_scenario();
  throw ValidationError("config", "unknown scenario: " + name);
}

struct OrderStats {
  Rat min, median, quantile, max;
};

OrderStats order_stats(std::vector<Rat> values, const Rat& quantile_level) {
  OrderStats s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.median = order_statistic_quantile(values, Rat(1, 2));
  s.quantile = order_statistic_quantile(values, quantile_level);
  return s;
}

}  // namespace

Rat order_statistic_quantile(std::vector<Rat> values, const Rat& level) {
  if (values.empty())
    throw ValidationError("parameter", "quantile of an empty sample");
  if (level <= 0 || level > 1)
    throw ValidationError("parameter", "quantile level must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  const BigInt count(static_cast<unsigned long long>(values.size()));
  const BigInt k = int_ceil_div(boost::multiprecision::numerator(level) * count,
                                boost::multiprecision::denominator(level));
  const std::size_t idx =
      std::max<std::size_t>(1, k.convert_to<std::size_t>()) - 1;
  return values[std::min(idx, values.size() - 1)];
}

BinomialInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                 double confidence) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials)
    throw ValidationError("parameter", "successes exceed trials");
  const double alpha = 1.0 - confidence;
  BinomialInterval ci;
  const double x = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  if (successes == 0) {
    ci.low = 0.0;
  } else {
    boost::math::beta_distribution<> lo(x, n - x + 1);
    ci.low = boost::math::quantile(lo, alpha / 2);
  }
  if (successes == trials) {
    ci.high = 1.0;
  } else {
    boost::math::beta_distribution<> hi(x + 1, n - x);
    ci.high = boost::math::quantile(hi, 1.0 - alpha / 2);
  }
  return ci;
}

namespace {

ContrastSweepReport run_contrast(const ContrastSweepConfig& config,
                                 const ContrastScenario& scenario) {
  if (config.trials == 0)
    throw ValidationError("config", "need at least one trial");
  if (config.m_grid.empty())
    throw ValidationError("config", "m grid must be nonempty");
  if (config.delta <= 0 || config.delta >= 1)
    throw ValidationError("config", "delta must lie in (0, 1)");

  ContrastSweepReport report;
  report.scenario = scenario.name;
  report.config = config;
  report.overlapping_supports = scenario.overlapping_supports;
  report.canonical_sparse_worst =
      worst_consistent_ood_error(scenario.sparse_class,
                                 scenario.canonical_samples, scenario.truth,
                                 scenario.test)
          .worst;
  report.canonical_full_worst =
      worst_consistent_ood_error(scenario.full_class, scenario.canonical_samples,
                                 scenario.truth, scenario.test)
          .worst;

  const std::size_t max_m =
      *std::max_element(config.m_grid.begin(), config.m_grid.end());
  const SampleRng root(config.seed);

  std::vector<std::vector<Rat>> sparse_by_trial(config.trials);
  std::vector<std::vector<Rat>> full_by_trial(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    SampleRng rng = root.derive(trial);
    const auto points = sample(scenario.train, rng, max_m);
    const auto samples = label_with(scenario.truth, points);
    sparse_by_trial[trial] =
        prefix_errors(scenario.sparse_class, scenario.truth, scenario.test,
                      samples, config.m_grid)
            .worst;
    full_by_trial[trial] =
        prefix_errors(scenario.full_class, scenario.truth, scenario.test,
                      samples, config.m_grid)
            .worst;
  });

  const Rat level = Rat(1) - config.delta;
  for (std::size_t mi = 0; mi < config.m_grid.size(); ++mi) {
    ContrastRow row;
    row.m = config.m_grid[mi];
    row.trials = config.trials;
    std::vector<Rat> sparse_vals, full_vals;
    sparse_vals.reserve(config.trials);
    full_vals.reserve(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) {
      sparse_vals.push_back(sparse_by_trial[t][mi]);
      full_vals.push_back(full_by_trial[t][mi]);
      if (sparse_by_trial[t][mi] == 0) ++row.sparse_reached_zero;
      if (full_by_trial[t][mi] == 1) ++row.full_at_one;
    }
    const OrderStats ss = order_stats(std::move(sparse_vals), level);
    row.sparse_min = ss.min;
    row.sparse_median = ss.median;
    row.sparse_quantile = ss.quantile;
    row.sparse_max = ss.max;
    const OrderStats fs = order_stats(std::move(full_vals), level);
    row.full_min = fs.min;
    row.full_median = fs.median;
    row.full_quantile = fs.quantile;
    row.full_max = fs.max;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ContrastSweepReport run_grue(const ContrastSweepConfig& config) {
  return run_contrast(config,
                      scenario_from_config("grue", config.time_grid,
                                           config.switch_index,
                                           config.test_min_time));
}

ContrastSweepReport run_xor_pixel(const ContrastSweepConfig& config) {
  return run_contrast(config, make_xor_pixel_scenario());
}

// --- randomized identity engines ---------------------------------------------

MarginalMatchCheck marginal_match_check(const FiniteDistribution& d,
                                        const FiniteDistribution& d_prime,
                                        const Hypothesis& h,
                                        const Hypothesis& f) {
  std::set<int> a_set;
  for (int i : feat(h)) a_set.insert(i);
  for (int i : feat(f)) a_set.insert(i);
  const std::vector<int> a(a_set.begin(), a_set.end());

  MarginalMatchCheck check;
  check.precondition_ok = marginalize(d, a) == marginalize(d_prime, a);
  if (!check.precondition_ok) return check;
  check.agreement_d = agreement_probability(d, h, f);
  check.agreement_d_prime = agreement_probability(d_prime, h, f);
  check.equal = check.agreement_d == check.agreement_d_prime;
  return check;
}

namespace {

FiniteDistribution random_distribution(const FeatureSpacePtr& space,
                                       int support_max, SampleRng& rng) {
  const std::size_t total = space->point_count_checked();
  const std::size_t support =
      1 + rng.next_below(std::min<std::size_t>(support_max, total));
  std::set<std::size_t> ranks;
  while (ranks.size() < support)
    ranks.insert(rng.next_below(total));
  std::vector<Atom> atoms;
  std::vector<unsigned> weights;
  unsigned total_weight = 0;
  for (std::size_t i = 0; i < support; ++i) {
    const unsigned w = 1 + static_cast<unsigned>(rng.next_below(9));
    weights.push_back(w);
    total_weight += w;
  }
  std::size_t i = 0;
  for (auto r : ranks) {
    atoms.push_back(Atom{point_from_rank(*space, r),
                         Rat(weights[i], total_weight)});
    ++i;
  }
  return FiniteDistribution::make(space, std::move(atoms));
}

HypothesisClass random_class(const FeatureSpacePtr& space, int member_max,
                             SampleRng& rng) {
  const std::size_t total = space->point_count_checked();
  const std::size_t count = 1 + rng.next_below(member_max);
  std::vector<Hypothesis> members;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<uint8_t> table(total);
    for (auto& b : table) b = static_cast<uint8_t>(rng.next_below(2));
    members.push_back(Hypothesis::from_table(space, std::move(table)));
  }
  return HypothesisClass::make(space, std::move(members));
}

struct RandomInstance {
  FeatureSpacePtr space;
  HypothesisClass lifted;
  std::size_t truth_index = 0;
  FiniteDistribution d;
  std::vector<LabeledSample> samples;
};

RandomInstance random_sparse_instance(const RandomInstanceConfig& config,
                                      SampleRng& rng) {
  const int n = 2 + static_cast<int>(rng.next_below(
                        std::max(1, config.n_max - 1)));
  const int values = 2 + static_cast<int>(rng.next_below(
                             std::max(1, config.values_max - 1)));
  const int k =
      1 + static_cast<int>(rng.next_below(std::min(config.k_max, n)));

  auto inner_space = make_space_indexed(k, values);
  const auto inner = random_class(inner_space, 6, rng);
  auto lifted = sparse_lift(inner, n, k);
  const std::size_t truth_index = rng.next_below(lifted.size());
  auto space = lifted.space_ptr();
  auto d = random_distribution(space, config.support_max, rng);
  const std::size_t m = rng.next_below(config.m_max + 1);
  const auto points = sample(d, rng, m);
  auto samples = label_with(lifted.members()[truth_index], points);
  return RandomInstance{std::move(space), std::move(lifted), truth_index,
                        std::move(d), std::move(samples)};
}

FiniteDistribution random_conditional_target(const RandomInstance& inst,
                                             const std::vector<int>& a,
                                             SampleRng& rng) {
  // D' = compose(D_A, fresh random conditionals on B).
  const auto marginal = marginalize(inst.d, a);
  std::set<int> in_a(a.begin(), a.end());
  std::vector<int> b;
  for (int i = 0; i < inst.space->n; ++i)
    if (!in_a.count(i)) b.push_back(i);
  auto b_space = make_space(static_cast<int>(b.size()), inst.space->values);

  std::map<StructuredPoint, FiniteDistribution> family;
  for (const auto& atom : marginal.atoms()) {
    if (b.empty()) {
      family.emplace(atom.point,
                     FiniteDistribution::point_mass(b_space,
                                                    StructuredPoint{{}}));
    } else {
      family.emplace(atom.point, random_distribution(b_space, 4, rng));
    }
  }
  return compose(inst.space, a, marginal,
                 [&family](const StructuredPoint& x)
                     -> std::optional<FiniteDistribution> {
                   auto it = family.find(x);
                   if (it == family.end()) return std::nullopt;
                   return it->second;
                 });
}

}  // namespace

namespace {

void validate_instance_config(const RandomInstanceConfig& config) {
  if (config.n_max < 2 || config.values_max < 2 || config.k_max < 1 ||
      config.support_max < 1 || config.m_max < 0 || config.instances < 1)
    throw ValidationError("config", "degenerate random-instance config");
}

}  // namespace

IdentityEngineReport run_marginal_match(const RandomInstanceConfig& config) {
  validate_instance_config(config);
  IdentityEngineReport report;
  report.min_margin = 0;
  const SampleRng root(config.seed);
  for (int i = 0; i < config.instances; ++i) {
    SampleRng rng = root.derive(static_cast<std::uint64_t>(i));
    const RandomInstance inst = random_sparse_instance(config, rng);
    const auto& truth = inst.lifted.members()[inst.truth_index];
    const auto consistent = consistent_set(inst.lifted, inst.samples);
    ++report.instances;
    for (auto idx : consistent) {
      const auto& h = inst.lifted.members()[idx];
      std::set<int> a_set;
      for (int v : feat(h)) a_set.insert(v);
      for (int v : feat(truth)) a_set.insert(v);
      const std::vector<int> a(a_set.begin(), a_set.end());
      const auto d_prime = random_conditional_target(inst, a, rng);
      const auto check = marginal_match_check(inst.d, d_prime, h, truth);
      ++report.hypotheses_checked;
      if (!check.precondition_ok || !check.equal) ++report.violations;
    }
  }
  return report;
}

IdentityEngineReport run_alpha_shift(const RandomInstanceConfig& config) {
  validate_instance_config(config);
  if (config.epsilon <= 0 || config.epsilon > 1)
    throw ValidationError("config", "epsilon must lie in (0, 1]");
  IdentityEngineReport report;
  report.min_margin = 1;
  const SampleRng root(config.seed);
  bool any_triggered = false;
  for (int i = 0; i < config.instances; ++i) {
    SampleRng rng = root.derive(static_cast<std::uint64_t>(i));
    const RandomInstance inst = random_sparse_instance(config, rng);
    const auto& truth = inst.lifted.members()[inst.truth_index];
    const auto d_prime =
        random_distribution(inst.space, config.support_max, rng);
    const auto consistent = consistent_set(inst.lifted, inst.samples);
    ++report.instances;
    bool instance_triggered = false;
    for (auto idx : consistent) {
      const auto& h = inst.lifted.members()[idx];
      ++report.hypotheses_checked;
      const Rat err_test = disagreement_probability(d_prime, h, truth);
      if (err_test < config.epsilon) continue;
      instance_triggered = true;
      any_triggered = true;
      ++report.triggered;
      std::set<int> a_set;
      for (int v : feat(h)) a_set.insert(v);
      for (int v : feat(truth)) a_set.insert(v);
      const std::vector<int> a(a_set.begin(), a_set.end());
      const auto alpha = alpha_exact(AlphaQuery{
          marginalize(inst.d, a), marginalize(d_prime, a), config.epsilon});
      const Rat err_train = disagreement_probability(inst.d, h, truth);
      const Rat margin = err_train - alpha.value;
      if (margin < report.min_margin) report.min_margin = margin;
      if (err_train < alpha.value) ++report.violations;
    }
    if (!instance_triggered) ++report.vacuous_instances;
  }
  if (!any_triggered) report.min_margin = 0;
  return report;
}

// --- subspace transfer engine --------------------------------------------------

namespace {

Rat random_small_rational(SampleRng& rng, int num_range) {
  const int num =
      static_cast<int>(rng.next_below(2 * num_range + 1)) - num_range;
  const unsigned den = rng.next_below(2) == 0 ? 1 : 2;
  return Rat(num, den);
}

RatVec random_vector(SampleRng& rng, int n, int num_range) {
  RatVec v(n);
  for (auto& c : v) c = random_small_rational(rng, num_range);
  return v;
}

RatMat random_matrix_no_zero_rows(SampleRng& rng, int k, int n) {
  RatMat w(k);
  for (auto& row : w) {
    do {
      row = random_vector(rng, n, 2);
    } while (std::all_of(row.begin(), row.end(),
                         [](const Rat& c) { return c == 0; }));
  }
  return w;
}

InnerFunction random_inner(SampleRng& rng, int k) {
  const auto kind = rng.next_below(3);
  if (kind == 0) {
    Halfspace hs;
    do {
      hs.weights = random_vector(rng, k, 2);
    } while (std::all_of(hs.weights.begin(), hs.weights.end(),
                         [](const Rat& c) { return c == 0; }));
    hs.threshold = random_small_rational(rng, 1);
    return hs;
  }
  auto random_ptf = [&rng, k]() {
    Ptf q;
    q.degree = 2;
    const std::size_t terms = 1 + rng.next_below(3);
    for (std::size_t t = 0; t < terms; ++t) {
      Monomial mono;
      mono.exponents.assign(k, 0);
      int budget = 2;
      for (int i = 0; i < k && budget > 0; ++i) {
        const int e = static_cast<int>(rng.next_below(budget + 1));
        mono.exponents[i] = e;
        budget -= e;
      }
      Rat c = random_small_rational(rng, 2);
      if (c == 0) c = 1;
      mono.coeff = c;
      q.terms.push_back(std::move(mono));
    }
    return q;
  };
  if (kind == 1) return random_ptf();
  BoolCombination combo;
  combo.ptfs = {random_ptf(), random_ptf()};
  combo.table.resize(4);
  for (auto& b : combo.table) b = static_cast<uint8_t>(rng.next_below(2));
  return combo;
}

PointMassMeasure random_measure(SampleRng& rng, int n, int support_max) {
  const std::size_t support = 1 + rng.next_below(support_max);
  std::vector<WeightedPoint> atoms;
  std::vector<unsigned> weights;
  unsigned total = 0;
  for (std::size_t i = 0; i < support; ++i) {
    const unsigned w = 1 + static_cast<unsigned>(rng.next_below(9));
    weights.push_back(w);
    total += w;
  }
  for (std::size_t i = 0; i < support; ++i)
    atoms.push_back(WeightedPoint{random_vector(rng, n, 3),
                                  Rat(weights[i], total)});
  // Duplicate points merge; rescale guarantees the total stays exactly 1.
  return PointMassMeasure::make(std::move(atoms));
}

std::vector<RatVec> sample_measure(const PointMassMeasure& d, SampleRng& rng,
                                   std::size_t m) {
  std::vector<Rat> cumulative;
  Rat acc = 0;
  for (const auto& a : d.atoms()) {
    acc += a.p;
    cumulative.push_back(acc);
  }
  const Rat two64 = Rat(BigInt(1) << 64);
  std::vector<RatVec> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rat u = Rat(BigInt(rng.next_u64())) / two64;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx =
        std::min(static_cast<std::size_t>(it - cumulative.begin()),
                 d.atoms().size() - 1);
    out.push_back(d.atoms()[idx].x);
  }
  return out;
}

}  // namespace

SubspaceTransferReport run_subspace_transfer(
    const SubspaceTransferConfig& config) {
  if (config.n_max < 2 || config.k_max < 1 || config.dictionary_max < 2 ||
      config.support_max < 1 || config.m_max < 0 || config.instances < 1)
    throw ValidationError("config", "degenerate subspace transfer config");
  SubspaceTransferReport report;
  const SampleRng root(config.seed);
  for (int i = 0; i < config.instances; ++i) {
    SampleRng rng = root.derive(static_cast<std::uint64_t>(i));
    const int n = 2 + static_cast<int>(rng.next_below(
                          std::max(1, config.n_max - 1)));
    const int k =
        1 + static_cast<int>(rng.next_below(std::min(config.k_max, n)));

    const std::size_t dict_size = 2 + rng.next_below(config.dictionary_max - 1);
    std::vector<SubspaceJunta> dictionary;
    dictionary.reserve(dict_size);
    for (std::size_t j = 0; j < dict_size; ++j)
      dictionary.push_back(SubspaceJunta::make(
          random_matrix_no_zero_rows(rng, k, n), random_inner(rng, k),
          "dict" + std::to_string(j)));
    const std::size_t truth_index = rng.next_below(dict_size);
    const SubspaceJunta& truth = dictionary[truth_index];

    const auto d = random_measure(rng, n, config.support_max);
    const std::size_t m = rng.next_below(config.m_max + 1);
    const auto sample_points = sample_measure(d, rng, m);
    std::vector<int> labels;
    labels.reserve(sample_points.size());
    for (const auto& x : sample_points) labels.push_back(truth.evaluate(x));

    ++report.instances;
    for (const auto& candidate : dictionary) {
      bool consistent = true;
      for (std::size_t s = 0; s < sample_points.size(); ++s)
        if (candidate.evaluate(sample_points[s]) != labels[s]) {
          consistent = false;
          break;
        }
      if (!consistent) continue;
      ++report.candidates_checked;

      // D': same masses, components orthogonal to the joint span replaced
      // by fresh noise per atom.
      const RatMat basis = joint_span_exact(truth.w(), candidate.w());
      std::vector<WeightedPoint> shifted;
      shifted.reserve(d.atoms().size());
      for (const auto& atom : d.atoms()) {
        const RatVec projected = rational_project(atom.x, basis);
        const RatVec noise = random_vector(rng, n, 3);
        const RatVec noise_in_a = rational_project(noise, basis);
        RatVec x(n);
        for (int c = 0; c < n; ++c)
          x[c] = projected[static_cast<std::size_t>(c)] +
                 noise[static_cast<std::size_t>(c)] -
                 noise_in_a[static_cast<std::size_t>(c)];
        shifted.push_back(WeightedPoint{std::move(x), atom.p});
      }
      const auto d_prime = PointMassMeasure::make(std::move(shifted));
      const auto check = transfer_identity_check(truth, candidate, d, d_prime);
      if (!check.precondition_ok) {
        ++report.precondition_rejections;
        continue;
      }
      if (!check.equal) ++report.violations;
    }
  }
  return report;
}

// --- sample-complexity sweep ----------------------------------------------------

SweepReport sample_complexity_sweep(const SweepConfig& config) {
  if (config.trials == 0)
    throw ValidationError("config", "need at least one trial");
  if (config.m_grid.empty())
    throw ValidationError("config", "m grid must be nonempty");
  if (config.delta <= 0 || config.delta >= 1)
    throw ValidationError("config", "delta must lie in (0, 1)");
  if (config.epsilon < 0 || config.epsilon > 1)
    throw ValidationError("config", "epsilon must lie in [0, 1]");
  if (config.class_mode != "sparse1" && config.class_mode != "full")
    throw ValidationError("config",
                          "class mode must be 'sparse1' or 'full'");

  const ContrastScenario scenario =
      scenario_from_config(config.scenario, config.time_grid,
                           config.switch_index, config.test_min_time);
  const HypothesisClass& cls = config.class_mode == "sparse1"
                                   ? scenario.sparse_class
                                   : scenario.full_class;

  SweepReport report;
  report.config = config;
  report.inner_vc = scenario.inner_vc;

  const std::size_t max_m =
      *std::max_element(config.m_grid.begin(), config.m_grid.end());
  const SampleRng root(config.seed);
  std::vector<PrefixErrors> by_trial(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    SampleRng rng = root.derive(trial);
    const auto points = sample(scenario.train, rng, max_m);
    const auto samples = label_with(scenario.truth, points);
    by_trial[trial] = prefix_errors(cls, scenario.truth, scenario.test,
                                    samples, config.m_grid);
  });

  const Rat level = Rat(1) - config.delta;
  for (std::size_t mi = 0; mi < config.m_grid.size(); ++mi) {
    SweepRow row;
    row.m = config.m_grid[mi];
    row.trials = config.trials;
    row.best_max = 0;
    std::vector<Rat> values;
    values.reserve(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) {
      values.push_back(by_trial[t].worst[mi]);
      if (by_trial[t].best[mi] > row.best_max)
        row.best_max = by_trial[t].best[mi];
      if (by_trial[t].worst[mi] <= config.epsilon) ++row.passed;
    }
    const OrderStats stats = order_stats(std::move(values), level);
    row.min_err = stats.min;
    row.median_err = stats.median;
    row.quantile_err = stats.quantile;
    row.max_err = stats.max;
    const BinomialInterval ci = clopper_pearson(row.passed, row.trials);
    row.pass_ci_low = ci.low;
    row.pass_ci_high = ci.high;
    if (!report.smallest_m_meeting_target &&
        row.quantile_err <= config.epsilon)
      report.smallest_m_meeting_target = row.m;
    report.rows.push_back(std::move(row));
  }

  for (const double c : config.bound_constants)
    report.bound_values.push_back(bounds::sparse_ood_sample_bound(
        scenario.inner_vc, 1.0, 2.0, rat_to_double(config.epsilon),
        rat_to_double(config.delta), c));
  return report;
}

}  // namespace oodlab
