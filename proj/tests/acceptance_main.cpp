// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fail. Each criterion carries the time budget it must meet.

#include "oodlab/alpha.hpp"
#include "oodlab/bounds.hpp"
#include "oodlab/dyadic.hpp"
#include "oodlab/experiments.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace oodlab;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

FiniteDistribution random_dist(const FeatureSpacePtr& space, SampleRng& rng,
                               std::size_t support_max) {
  const std::size_t total = space->point_count_checked();
  const std::size_t support = 1 + rng.next_below(std::min(support_max, total));
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

HypothesisClass random_table_class(const FeatureSpacePtr& space,
                                   std::size_t member_max, SampleRng& rng) {
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

// --- criterion 1: closed form vs the discretized exact optimum ---------------

bool closed_form_cross_check(std::string& detail) {
  const int grid = 10000;
  double worst_diff = 0;
  double worst_gap = 0;
  for (double k_range : {0.5, 1.0, 2.0}) {
    const auto pair = discretize_uniform_exponential(k_range, grid);
    AlphaOptions options;
    options.support_cap = grid + 1;
    for (double eps : {0.2, 0.5, 0.9}) {
      const Rat eps_rat = rat_from_double(eps);
      for (int direction = 0; direction < 2; ++direction) {
        const auto started = std::chrono::steady_clock::now();
        const bool uniform_trains = direction == 0;
        const auto& train =
            uniform_trains ? pair.uniform_part : pair.exponential_part;
        const auto& test =
            uniform_trains ? pair.exponential_part : pair.uniform_part;
        const double closed = alpha_uniform_exponential(
            k_range, eps,
            uniform_trains ? AlphaDirection::kUniformToExponential
                           : AlphaDirection::kExponentialToUniform);
        const auto exact =
            alpha_exact(AlphaQuery{train, test, eps_rat}, options);
        const auto bounds = alpha_bounds(AlphaQuery{train, test, eps_rat});
        const double diff = std::abs(rat_to_double(exact.value) - closed);
        const double gap = rat_to_double(bounds.upper - bounds.lower);
        worst_diff = std::max(worst_diff, diff);
        worst_gap = std::max(worst_gap, gap);
        if (diff > 1e-3) {
          detail = "diff " + std::to_string(diff) + " at K=" +
                   std::to_string(k_range) + " eps=" + std::to_string(eps);
          return false;
        }
        if (bounds.lower > exact.value || exact.value > bounds.upper) {
          detail = "sandwich violated";
          return false;
        }
        if (gap > 1e-3) {
          detail = "bounds gap " + std::to_string(gap);
          return false;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        if (elapsed > 10.0) {
          detail = "single case took " + std::to_string(elapsed) + "s";
          return false;
        }
      }
    }
  }
  std::ostringstream out;
  out << "18 cases; max |exact-closed| = " << worst_diff
      << ", max bounds gap = " << worst_gap;
  detail = out.str();
  return true;
}

// --- criterion 2: the off-support zero rule ------------------------------------

bool zero_rule(std::string& detail) {
  SampleRng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    const int on_support = 2 + static_cast<int>(rng.next_below(5));
    const int off_support = 1 + static_cast<int>(rng.next_below(5));
    auto space = make_space_indexed(1, on_support + off_support);
    std::vector<Atom> d_atoms, dp_atoms;
    unsigned dw = 0, pw = 0;
    std::vector<unsigned> dws(on_support), pws(on_support + off_support);
    for (auto& w : dws) {
      w = 1 + static_cast<unsigned>(rng.next_below(9));
      dw += w;
    }
    for (auto& w : pws) {
      w = 1 + static_cast<unsigned>(rng.next_below(9));
      pw += w;
    }
    Rat mu = 0;
    for (int v = 0; v < on_support; ++v)
      d_atoms.push_back(Atom{StructuredPoint{{v}}, Rat(dws[v], dw)});
    for (int v = 0; v < on_support + off_support; ++v) {
      const Rat p(pws[v], pw);
      dp_atoms.push_back(Atom{StructuredPoint{{v}}, p});
      if (v >= on_support) mu += p;
    }
    const auto d = FiniteDistribution::make(space, d_atoms);
    const auto dp = FiniteDistribution::make(space, dp_atoms);
    for (int step = 1; step <= 4; ++step) {
      const Rat eps = mu * Rat(step, 4);
      const auto result = alpha_exact(AlphaQuery{d, dp, eps});
      if (result.value != 0) {
        detail = "nonzero alpha below the off-support mass";
        return false;
      }
    }
  }
  detail = "100 pairs, 4 epsilon levels each, all exactly zero";
  return true;
}

// --- criterion 3: the amplification contrapositive -----------------------------

bool contrapositive_engine(std::string& detail) {
  SampleRng rng(1003);
  std::size_t triggered = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(2));
    auto space = make_space_indexed(n, n == 1 ? 12 : 3);
    const auto d = random_dist(space, rng, 12);
    const auto dp = random_dist(space, rng, 12);
    const auto cls = random_table_class(space, 64, rng);
    const auto f = cls.members()[rng.next_below(cls.size())];
    const Rat eps(1 + rng.next_below(9), 10);
    const auto report = verify_alpha_contrapositive(d, dp, f, cls, eps);
    triggered += report.members_triggered;
    if (report.violations != 0) {
      detail = "violations at trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "300 instances, " + std::to_string(triggered) +
           " triggered members, 0 violations";
  return true;
}

// --- criterion 4: union and sparse-lift dimension bounds ------------------------

bool vc_bound_inequalities(std::string& detail) {
  SampleRng rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = make_space_indexed(1, 4 + static_cast<int>(rng.next_below(7)));
    const std::size_t parts = 2 + rng.next_below(19);
    std::vector<HypothesisClass> classes;
    int d = 0;
    for (std::size_t i = 0; i < parts; ++i) {
      classes.push_back(random_table_class(space, 8, rng));
      d = std::max(d, vc_dimension_exact(classes.back()).dimension);
    }
    const auto unioned = HypothesisClass::union_of(classes);
    const auto vc = vc_dimension_exact(unioned, 12);
    if (vc.capped || vc.dimension >
        bounds::union_vc_bound(d, static_cast<double>(parts))) {
      detail = "union bound violated at trial " + std::to_string(trial);
      return false;
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(4));
    const int k = 1 + static_cast<int>(rng.next_below(2));
    auto ispace = make_space_indexed(k, 2);
    const auto inner = random_table_class(ispace, 5, rng);
    const int d_k = vc_dimension_exact(inner).dimension;
    const auto lifted = sparse_lift(inner, n, k);
    const auto vc = vc_dimension_exact(lifted, 10);
    if (vc.capped || vc.dimension > bounds::sparse_vc_bound(d_k, k, n)) {
      detail = "sparse bound violated at trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "200 unions + 200 lifts, every exact dimension under its bound";
  return true;
}

// --- criterion 5: halfspaces on a plane grid ------------------------------------

HypothesisClass halfspace_grid_class(int grid) {
  auto space = make_space_indexed(2, grid);
  std::vector<std::pair<double, double>> coords;
  std::vector<StructuredPoint> points;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      coords.emplace_back(i, j);
      points.push_back(StructuredPoint{{i, j}});
    }
  const std::size_t total = coords.size();

  std::vector<std::pair<double, double>> normals{{1, 0}, {0, 1}, {-1, 0},
                                                 {0, -1}};
  const double tiny = 1e-6;
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      if (a == b) continue;
      const double dx = coords[b].first - coords[a].first;
      const double dy = coords[b].second - coords[a].second;
      // Normal to the chord plus slight rotations either side: one
      // candidate per arc of the direction circle.
      const double base[2] = {-dy, dx};
      for (double rot : {-tiny, 0.0, tiny}) {
        const double c = std::cos(rot), s = std::sin(rot);
        normals.emplace_back(base[0] * c - base[1] * s,
                             base[0] * s + base[1] * c);
      }
    }

  std::set<std::vector<uint8_t>> tables;
  tables.insert(std::vector<uint8_t>(total, 0));
  tables.insert(std::vector<uint8_t>(total, 1));
  for (const auto& [wx, wy] : normals) {
    std::vector<double> projection(total);
    for (std::size_t i = 0; i < total; ++i)
      projection[i] = wx * coords[i].first + wy * coords[i].second;
    std::set<double> cuts(projection.begin(), projection.end());
    for (double theta : cuts) {
      std::vector<uint8_t> table(total);
      for (std::size_t i = 0; i < total; ++i) {
        const auto p = points[i];
        const std::size_t rank = point_rank(*space, p);
        table[rank] = projection[i] >= theta ? 1 : 0;
      }
      tables.insert(std::move(table));
    }
  }
  std::vector<Hypothesis> members;
  members.reserve(tables.size());
  for (auto& t : tables)
    members.push_back(Hypothesis::from_table(space, std::vector<uint8_t>(t)));
  return HypothesisClass::make(space, std::move(members));
}

bool halfspace_sanity(std::string& detail) {
  const int grid = 4;
  const auto cls = halfspace_grid_class(grid);
  auto space = cls.space_ptr();

  // A non-collinear triple must be shattered.
  const std::vector<StructuredPoint> triangle{
      StructuredPoint{{0, 0}}, StructuredPoint{{3, 0}}, StructuredPoint{{0, 3}}};
  if (!shatters(cls, triangle).shattered) {
    detail = "triangle not shattered";
    return false;
  }

  // The exact dimension of plane halfspaces is n + 1 = 3, and it stays
  // under the semi-algebraic calculator's value.
  const auto vc = vc_dimension_exact(cls, 6);
  if (vc.capped || vc.dimension != 3) {
    detail = "grid halfspace dimension != 3";
    return false;
  }
  if (vc.dimension > bounds::semialgebraic_vc_bound(1, 1, 2)) {
    detail = "exact dimension above the calculator bound";
    return false;
  }

  // Every sampled 4-subset must refute.
  SampleRng rng(1005);
  const std::size_t total = space->point_count_checked();
  for (int trial = 0; trial < 500; ++trial) {
    std::set<std::size_t> ranks;
    while (ranks.size() < 4) ranks.insert(rng.next_below(total));
    std::vector<StructuredPoint> quad;
    for (auto r : ranks) quad.push_back(point_from_rank(*space, r));
    const auto outcome = shatters(cls, quad);
    if (outcome.shattered) {
      detail = "a 4-set was shattered";
      return false;
    }
    if (!outcome.missing_labeling.has_value()) {
      detail = "refutation without a missing labeling";
      return false;
    }
  }
  std::ostringstream out;
  out << cls.size() << " halfspace labelings on the " << grid << "x" << grid
      << " grid; triangle shattered, 500/500 4-sets refuted";
  detail = out.str();
  return true;
}

// --- criterion 6: the square-wave construction ----------------------------------

bool square_wave_counterexample(std::string& detail) {
  const int m = 12;
  for (std::size_t code = 0; code < (std::size_t{1} << m); ++code) {
    std::vector<uint8_t> labels(m);
    for (int i = 0; i < m; ++i)
      labels[i] = static_cast<uint8_t>((code >> (m - 1 - i)) & 1);
    if (!verify_shatter(labels)) {
      detail = "labeling " + std::to_string(code) + " failed";
      return false;
    }
  }
  detail = "all 4096 labelings at m = 12 realized in exact dyadic arithmetic";
  return true;
}

// --- criteria 7 and 8: the equality engines --------------------------------------

bool marginal_match_engine(std::string& detail) {
  RandomInstanceConfig config;
  config.instances = 200;
  config.seed = 1007;
  const auto report = run_marginal_match(config);
  std::ostringstream out;
  out << report.hypotheses_checked << " hypothesis checks over "
      << report.instances << " instances, " << report.violations
      << " violations";
  detail = out.str();
  return report.violations == 0 && report.hypotheses_checked > 0;
}

bool subspace_transfer_engine(std::string& detail) {
  SubspaceTransferConfig config;
  config.instances = 100;
  config.seed = 1008;
  const auto report = run_subspace_transfer(config);
  std::ostringstream out;
  out << report.candidates_checked << " candidate checks over "
      << report.instances << " instances, " << report.violations
      << " violations, " << report.precondition_rejections << " rejections";
  detail = out.str();
  return report.violations == 0 && report.precondition_rejections == 0 &&
         report.candidates_checked > 0;
}

// --- criterion 9: the headline contrast -------------------------------------------

bool headline_contrast(std::string& detail) {
  const auto grue = make_grue_scenario(16, 8);
  const auto grue_sparse = worst_consistent_ood_error(
      grue.sparse_class, grue.canonical_samples, grue.truth, grue.test);
  const auto grue_full = worst_consistent_ood_error(
      grue.full_class, grue.canonical_samples, grue.truth, grue.test);

  const auto xp = make_xor_pixel_scenario();
  const auto xp_sparse = worst_consistent_ood_error(
      xp.sparse_class, xp.canonical_samples, xp.truth, xp.test);
  const auto xp_full = worst_consistent_ood_error(
      xp.full_class, xp.canonical_samples, xp.truth, xp.test);

  if (grue_sparse.worst != 0 || xp_sparse.worst != 0) {
    detail = "sparse restriction failed to pin the truth";
    return false;
  }
  if (grue_full.worst != 1 || xp_full.worst != 1) {
    detail = "unrestricted class missed the total-failure member";
    return false;
  }
  detail = "grue and pixel scenarios: sparse worst = 0, unrestricted worst = 1,"
           " exactly";
  return true;
}

// --- criterion 10: sweep behaviour --------------------------------------------------

bool sweep_behaviour(std::string& detail) {
  SweepConfig config;
  config.scenario = "grue";
  config.class_mode = "sparse1";
  config.time_grid = 16;
  config.switch_index = 8;
  config.m_grid = {0, 1, 2, 4, 8, 16, 32, 64, 128};
  config.trials = 200;
  config.delta = Rat(1, 10);
  config.epsilon = Rat(1, 20);
  config.seed = 1010;
  config.threads = 4;
  const auto report = sample_complexity_sweep(config);
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].quantile_err > report.rows[i - 1].quantile_err) {
      detail = "quantile increased between rows";
      return false;
    }
  if (report.rows.back().quantile_err != 0) {
    detail = "quantile did not reach zero at full-support m";
    return false;
  }
  std::ostringstream out;
  out << "0.9-quantile non-increasing over " << report.rows.size()
      << " rows, 0 at m = " << report.rows.back().m;
  if (report.smallest_m_meeting_target)
    out << ", target met from m = " << *report.smallest_m_meeting_target;
  detail = out.str();
  return true;
}

// --- criterion 11: the calculator regression table -----------------------------------

bool calculator_regression(std::string& detail) {
  const auto close4 = [](double value, double expect) {
    return std::abs(value - expect) <= 5e-5 * std::abs(expect);
  };
  namespace b = bounds;
  if (!close4(b::union_vc_bound(3, 100), 58.0517)) {
    detail = "union(3, 100)";
    return false;
  }
  if (!close4(b::union_vc_bound(0, 2), 6.931472)) {
    detail = "union(0, 2)";
    return false;
  }
  if (!close4(b::sparse_vc_bound(2, 2, 10), 54.0517)) {
    detail = "sparse(2, 2, 10)";
    return false;
  }
  if (!close4(b::blumer_sample_bound(1, std::exp(-1), std::exp(-1), 1),
              5.436564)) {
    detail = "blumer at 1/e";
    return false;
  }
  if (!close4(b::alpha_sample_bound(2, 0.1, 0.1, 1), 92.10340)) {
    detail = "alpha-sample(2, 0.1, 0.1)";
    return false;
  }
  if (!close4(b::sparse_ood_sample_bound(1, 1, std::exp(1.0), std::exp(-1),
                                         std::exp(-1), 1),
              10.87313)) {
    detail = "sparse-ood at 1/e";
    return false;
  }
  if (!close4(b::semialgebraic_vc_bound(1, 1, 2), 15.50978)) {
    detail = "semialgebraic(1, 1, 2)";
    return false;
  }
  if (!close4(b::semialgebraic_vc_bound(1, 1, 9), 86.43856)) {
    detail = "semialgebraic(1, 1, 9)";
    return false;
  }
  if (!close4(b::subspace_junta_vc_bound(2, 1, 1, 1), 36.67970)) {
    detail = "subspace(2, 1, 1, 1)";
    return false;
  }
  if (!close4(b::t_combination_vc_bound(4, 1, 2), 36.67970)) {
    detail = "t-combination(4, 1, 2)";
    return false;
  }
  if (!close4(b::t_combination_vc_bound(1, 1, 1), 7.169925)) {
    detail = "t-combination(1, 1, 1)";
    return false;
  }
  if (b::parameter_count(2, 1, 1, 1) != 4 || b::monomial_count(2, 2) != 6) {
    detail = "exact counts";
    return false;
  }
  // The subspace bound is the combination bound at the parameter count.
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      for (int t = 1; t <= 3; ++t)
        for (int ell = 1; ell <= 3; ++ell) {
          const double lhs = b::subspace_junta_vc_bound(n, ell, k, t);
          const double rhs = b::t_combination_vc_bound(
              b::parameter_count(n, ell, k, t).convert_to<double>(), t,
              ell + 1);
          if (std::abs(lhs - rhs) > 1e-9) {
            detail = "consistency identity broke";
            return false;
          }
        }
  detail = "all frozen values reproduced to 4 significant figures";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "alpha closed-form cross-check on 10^4-bin grids", 180.0,
       closed_form_cross_check},
      {2, "alpha zero rule below the off-support mass", 5.0, zero_rule},
      {3, "amplification contrapositive over random instances", 60.0,
       contrapositive_engine},
      {4, "union and sparse-lift dimensions under the closed forms", 300.0,
       vc_bound_inequalities},
      {5, "plane halfspaces: a 3-set shatters, 4-sets never", 60.0,
       halfspace_sanity},
      {6, "square-wave construction realizes all 2^12 labelings", 30.0,
       square_wave_counterexample},
      {7, "matched-marginal equality engine", 60.0, marginal_match_engine},
      {8, "subspace transfer equality engine", 120.0, subspace_transfer_engine},
      {9, "grue and pixel contrast: 0 versus 1, exactly", 10.0,
       headline_contrast},
      {10, "sparse sweep quantile: non-increasing, zero at coverage", 120.0,
       sweep_behaviour},
      {11, "calculator regression table", 10.0, calculator_regression},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    if (ok && elapsed > criterion.budget_seconds) {
      ok = false;
      detail += " (over the " + std::to_string(criterion.budget_seconds) +
                "s budget)";
    }
    std::printf("[%s] %2d. %s — %s [%.2fs]\n", ok ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), detail.c_str(), elapsed);
    if (!ok) ++failures;
  }
  if (failures > 0)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
