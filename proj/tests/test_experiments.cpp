#include "oodlab/experiments.hpp"

#include "oodlab/errors.hpp"
#include "oodlab/json_io.hpp"

#include <doctest.h>

using namespace oodlab;

TEST_CASE("consistent set") {
  const auto scenario = make_xor_pixel_scenario();
  SUBCASE("no samples keep the whole class") {
    CHECK(consistent_set(scenario.full_class, {}).size() ==
          scenario.full_class.size());
  }
  SUBCASE("full domain coverage pins the truth up to functional duplicates") {
    std::vector<StructuredPoint> all;
    for (std::size_t r = 0; r < scenario.space->point_count_checked(); ++r)
      all.push_back(point_from_rank(*scenario.space, r));
    const auto samples = label_with(scenario.truth, all);
    const auto indices = consistent_set(scenario.full_class, samples);
    REQUIRE(indices.size() == 1);
    CHECK(scenario.full_class.members()[indices[0]].same_function(
        scenario.truth));
  }
  SUBCASE("a constant pixel leaves both the dictator and the parity member") {
    // Training samples all have the pixel feature at 0.
    const auto samples = scenario.canonical_samples;
    const auto indices = consistent_set(scenario.full_class, samples);
    bool has_dictator = false, has_parity = false;
    for (auto i : indices) {
      const auto& h = scenario.full_class.members()[i];
      if (h.same_function(scenario.truth)) has_dictator = true;
      if (h.same_function(Hypothesis::xor_pair(scenario.space, 0, 1)))
        has_parity = true;
    }
    CHECK(has_dictator);
    CHECK(has_parity);
  }
}

TEST_CASE("worst consistent test error") {
  const auto scenario = make_grue_scenario(16, 8);
  SUBCASE("canonical samples: the sparse class generalizes exactly") {
    const auto wc = worst_consistent_ood_error(
        scenario.sparse_class, scenario.canonical_samples, scenario.truth,
        scenario.test);
    CHECK(wc.worst == 0);
    CHECK(wc.best == 0);
    CHECK(wc.consistent_count == 1);
  }
  SUBCASE("canonical samples: the full class contains a total failure") {
    const auto wc = worst_consistent_ood_error(
        scenario.full_class, scenario.canonical_samples, scenario.truth,
        scenario.test);
    CHECK(wc.worst == 1);
    CHECK(wc.best == 0);
  }
  SUBCASE("with no samples both classes can be totally wrong") {
    const auto sparse = worst_consistent_ood_error(
        scenario.sparse_class, {}, scenario.truth, scenario.test);
    CHECK(sparse.worst == 1);
    const auto full = worst_consistent_ood_error(
        scenario.full_class, {}, scenario.truth, scenario.test);
    CHECK(full.worst == 1);
  }
  SUBCASE("the truth alone has zero error") {
    const auto singleton = HypothesisClass::make(
        scenario.space, {scenario.truth});
    const auto wc = worst_consistent_ood_error(singleton, {}, scenario.truth,
                                               scenario.test);
    CHECK(wc.worst == 0);
  }
}

TEST_CASE("consistent set is antitone in the samples") {
  const auto scenario = make_grue_scenario(8, 4);
  SampleRng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    SampleRng trial_rng = rng.derive(trial);
    const auto points = sample(scenario.train, trial_rng, 12);
    const auto samples = label_with(scenario.truth, points);
    std::size_t previous = scenario.full_class.size() + 1;
    for (std::size_t m = 0; m <= samples.size(); m += 3) {
      const std::vector<LabeledSample> prefix(samples.begin(),
                                              samples.begin() + m);
      const auto count = consistent_set(scenario.full_class, prefix).size();
      CHECK(count <= previous);
      previous = count;
    }
  }
}

TEST_CASE("grue contrast sweep") {
  ContrastSweepConfig config;
  config.time_grid = 16;
  config.switch_index = 8;
  config.m_grid = {0, 1, 2, 4, 8, 16};
  config.trials = 60;
  config.seed = 99;
  const auto report = run_grue(config);

  CHECK(report.canonical_sparse_worst == 0);
  CHECK(report.canonical_full_worst == 1);
  CHECK_FALSE(report.overlapping_supports);

  SUBCASE("the m = 0 row is the no-data worst error for both classes") {
    CHECK(report.rows[0].sparse_max == 1);
    CHECK(report.rows[0].sparse_min == 1);
    CHECK(report.rows[0].full_max == 1);
  }
  SUBCASE("quantiles never increase along the grid") {
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      CHECK(report.rows[i].sparse_quantile <=
            report.rows[i - 1].sparse_quantile);
      CHECK(report.rows[i].full_quantile <= report.rows[i - 1].full_quantile);
    }
  }
  SUBCASE("the switching member keeps the full class at error one forever") {
    for (const auto& row : report.rows) CHECK(row.full_max == 1);
    CHECK(report.rows.back().full_at_one == config.trials);
  }
  SUBCASE("identical configs give identical reports") {
    const auto again = run_grue(config);
    CHECK(io::dump_pretty(io::contrast_report_to_json(again)) ==
          io::dump_pretty(io::contrast_report_to_json(report)));
  }
  SUBCASE("threaded runs reduce to the same report") {
    ContrastSweepConfig threaded = config;
    threaded.threads = 4;
    const auto parallel = run_grue(threaded);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      CHECK(parallel.rows[i].sparse_quantile == report.rows[i].sparse_quantile);
      CHECK(parallel.rows[i].full_quantile == report.rows[i].full_quantile);
    }
  }
}

TEST_CASE("overlapping supports are flagged but run") {
  ContrastSweepConfig config;
  config.time_grid = 8;
  config.switch_index = 4;
  config.test_min_time = 2;
  config.m_grid = {0, 4};
  config.trials = 10;
  const auto report = run_grue(config);
  CHECK(report.overlapping_supports);
  CHECK(report.rows.size() == 2);
}

TEST_CASE("xor-pixel contrast") {
  ContrastSweepConfig config;
  config.scenario = "xor_pixel";
  config.m_grid = {0, 1, 2, 4, 8};
  config.trials = 50;
  config.seed = 31;
  const auto report = run_xor_pixel(config);
  CHECK(report.canonical_sparse_worst == 0);
  CHECK(report.canonical_full_worst == 1);
  // Both values of the relevant feature appear quickly under the uniform
  // training distribution, so the sparse quantile reaches zero.
  CHECK(report.rows.back().sparse_quantile == 0);
  for (const auto& row : report.rows) CHECK(row.full_max == 1);
}

TEST_CASE("marginal match engine finds no violations") {
  RandomInstanceConfig config;
  config.instances = 60;
  config.seed = 7;
  const auto report = run_marginal_match(config);
  CHECK(report.instances == 60);
  CHECK(report.hypotheses_checked > 0);
  CHECK(report.violations == 0);
}

TEST_CASE("marginal match checker refuses mismatched marginals") {
  auto space = make_space_indexed(2, 2);
  const auto h = Hypothesis::dictator(space, 0);
  const auto f = Hypothesis::dictator(space, 0);
  const auto d = FiniteDistribution::uniform_over(
      space, {StructuredPoint{{0, 0}}, StructuredPoint{{1, 0}}});
  // D' flips the x0 marginal: 3/4 on x0=0.
  const auto dp = FiniteDistribution::make(
      space, {Atom{StructuredPoint{{0, 0}}, Rat(3, 4)},
              Atom{StructuredPoint{{1, 0}}, Rat(1, 4)}});
  const auto check = marginal_match_check(d, dp, h, f);
  CHECK_FALSE(check.precondition_ok);

  // Matching marginals on A = {0} pass even though the x1 conditionals moved.
  const auto dp_matched = FiniteDistribution::uniform_over(
      space, {StructuredPoint{{0, 1}}, StructuredPoint{{1, 1}}});
  const auto ok = marginal_match_check(d, dp_matched, h, f);
  CHECK(ok.precondition_ok);
  CHECK(ok.equal);
}

TEST_CASE("alpha shift engine finds no violations") {
  RandomInstanceConfig config;
  config.instances = 60;
  config.epsilon = Rat(1, 5);
  config.seed = 13;
  const auto report = run_alpha_shift(config);
  CHECK(report.instances == 60);
  CHECK(report.violations == 0);
  if (report.triggered > 0) CHECK(report.min_margin >= 0);
}

TEST_CASE("subspace transfer engine finds no violations") {
  SubspaceTransferConfig config;
  config.instances = 25;
  config.dictionary_max = 12;
  config.seed = 21;
  const auto report = run_subspace_transfer(config);
  CHECK(report.instances == 25);
  CHECK(report.candidates_checked > 0);
  CHECK(report.precondition_rejections == 0);
  CHECK(report.violations == 0);
}

TEST_CASE("sample-complexity sweep") {
  SweepConfig config;
  config.scenario = "grue";
  config.class_mode = "sparse1";
  config.time_grid = 16;
  config.switch_index = 8;
  config.m_grid = {0, 1, 2, 4, 8, 16, 32};
  config.trials = 100;
  config.delta = Rat(1, 10);
  config.epsilon = Rat(1, 20);
  config.seed = 5;
  const auto report = sample_complexity_sweep(config);

  REQUIRE(report.rows.size() == config.m_grid.size());
  SUBCASE("quantile curve is non-increasing and reaches zero") {
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      CHECK(report.rows[i].quantile_err <= report.rows[i - 1].quantile_err);
    CHECK(report.rows.back().quantile_err == 0);
    REQUIRE(report.smallest_m_meeting_target.has_value());
  }
  SUBCASE("m = 0 row is the no-data worst error") {
    CHECK(report.rows[0].min_err == 1);
    CHECK(report.rows[0].max_err == 1);
  }
  SUBCASE("the best consistent member is always the truth in realizable runs") {
    for (const auto& row : report.rows) {
      CHECK(row.best_max == 0);
      CHECK(row.best_max <= row.max_err);
    }
  }
  SUBCASE("bound column uses the requested constants") {
    REQUIRE(report.bound_values.size() == 1);
    CHECK(report.bound_values[0] > 0);
  }
  SUBCASE("pass interval brackets the pass fraction") {
    for (const auto& row : report.rows) {
      const double frac =
          static_cast<double>(row.passed) / static_cast<double>(row.trials);
      CHECK(row.pass_ci_low <= frac + 1e-12);
      CHECK(row.pass_ci_high >= frac - 1e-12);
    }
  }
}

TEST_CASE("quantile order statistic") {
  std::vector<Rat> values{Rat(3), Rat(1), Rat(2), Rat(4)};
  CHECK(order_statistic_quantile(values, Rat(1, 2)) == 2);
  CHECK(order_statistic_quantile(values, Rat(9, 10)) == 4);
  CHECK(order_statistic_quantile(values, Rat(1, 4)) == 1);
  CHECK(order_statistic_quantile(values, Rat(1)) == 4);
  CHECK_THROWS_AS(order_statistic_quantile({}, Rat(1, 2)), ValidationError);
  // Quantiles are monotone in the level.
  Rat previous = 0;
  for (int level = 1; level <= 10; ++level) {
    const Rat q = order_statistic_quantile(values, Rat(level, 10));
    CHECK(q >= previous);
    previous = q;
  }
}

TEST_CASE("clopper-pearson endpoints") {
  const auto all = clopper_pearson(10, 10);
  CHECK(all.high == 1.0);
  CHECK(all.low == doctest::Approx(0.6915).epsilon(1e-3));
  const auto none = clopper_pearson(0, 10);
  CHECK(none.low == 0.0);
  CHECK(none.high == doctest::Approx(0.3085).epsilon(1e-3));
  const auto half = clopper_pearson(5, 10);
  CHECK(half.low < 0.5);
  CHECK(half.high > 0.5);
}

TEST_CASE("config json round trips with unknown keys rejected") {
  io::json doc;
  doc["scenario"] = "grue";
  doc["time_grid"] = 12;
  doc["switch"] = 6;
  doc["m_grid"] = {0, 2, 4};
  doc["trials"] = 25;
  doc["seed"] = 17;
  const auto config = io::contrast_config_from_json(doc);
  CHECK(config.time_grid == 12);
  CHECK(config.switch_index == 6);
  CHECK(config.trials == 25);
  doc["bogus"] = 1;
  CHECK_THROWS_AS(io::contrast_config_from_json(doc), ValidationError);
}
