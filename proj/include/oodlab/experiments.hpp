#pragma once

#include "oodlab/alpha.hpp"
#include "oodlab/distribution.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/rng.hpp"
#include "oodlab/subspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oodlab {

struct LabeledSample {
  StructuredPoint point;
  int label = 0;
};

// Labels computed from the ground truth; realizable by construction.
std::vector<LabeledSample> label_with(const Hypothesis& truth,
                                      const std::vector<StructuredPoint>& pts);

// Indices of the members agreeing with every sample label.
std::vector<std::size_t> consistent_set(const HypothesisClass& cls,
                                        const std::vector<LabeledSample>& samples);

struct WorstConsistent {
  std::size_t consistent_count = 0;
  Rat worst;  // max Pr_{Dtest}[h != f] over consistent members
  Rat best;   // min over the same set
  std::optional<std::size_t> worst_index;
};

// Throws a validation error when no member is consistent (cannot happen in
// realizable runs where the truth belongs to the class).
WorstConsistent worst_consistent_ood_error(const HypothesisClass& cls,
                                           const std::vector<LabeledSample>& samples,
                                           const Hypothesis& truth,
                                           const FiniteDistribution& d_test);

// --- the two headline scenarios --------------------------------------------

// A train/test pair whose supports split on one feature, a ground truth
// depending on the other, and two candidate classes: the full class contains
// a switching member that is consistent with all training data yet wrong on
// the whole test support; the sparse restriction does not.
struct ContrastScenario {
  std::string name;
  FeatureSpacePtr space;
  FiniteDistribution train;
  FiniteDistribution test;
  Hypothesis truth;
  HypothesisClass full_class;
  HypothesisClass sparse_class;  // members depending on at most one feature
  // Two samples that observe both values of the label-relevant feature; the
  // smallest training set realizing the headline contrast.
  std::vector<LabeledSample> canonical_samples;
  bool overlapping_supports = false;
  int inner_vc = 1;  // exact VC of the single-feature member family
};

// Time values 0..time_grid-1; training times < switch_index, test times
// >= test_min_time (defaults to switch_index; smaller values overlap the
// supports, which is flagged but still runs).
ContrastScenario make_grue_scenario(int time_grid, int switch_index,
                                    int test_min_time = -1);
ContrastScenario make_xor_pixel_scenario();

struct ContrastSweepConfig {
  std::string scenario = "grue";  // "grue" | "xor_pixel"
  int time_grid = 16;
  int switch_index = 8;
  int test_min_time = -1;
  std::vector<std::size_t> m_grid = {0, 1, 2, 4, 8, 16, 32, 64};
  std::size_t trials = 50;
  Rat delta = Rat(1, 10);
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ContrastRow {
  std::size_t m = 0;
  std::size_t trials = 0;
  // Order statistics of the per-trial worst consistent test error.
  Rat sparse_min, sparse_median, sparse_quantile, sparse_max;
  Rat full_min, full_median, full_quantile, full_max;
  std::size_t sparse_reached_zero = 0;  // trials with sparse worst == 0
  std::size_t full_at_one = 0;          // trials with full worst == 1
};

struct ContrastSweepReport {
  std::string scenario;
  ContrastSweepConfig config;
  bool overlapping_supports = false;
  // Exact contrast on the canonical samples (both label-relevant values
  // observed): sparse worst and full worst.
  Rat canonical_sparse_worst;
  Rat canonical_full_worst;
  std::vector<ContrastRow> rows;
};

// Per-m trials with nested sample prefixes: per-trial errors are
// non-increasing in m, so every aggregated quantile is too.
ContrastSweepReport run_grue(const ContrastSweepConfig& config);
ContrastSweepReport run_xor_pixel(const ContrastSweepConfig& config);

// --- randomized identity engines -------------------------------------------

struct MarginalMatchCheck {
  bool precondition_ok = false;  // D'_A == D_A for A = Feat(h) u Feat(f)
  Rat agreement_d;
  Rat agreement_d_prime;
  bool equal = false;
};

// The transfer identity for one hypothesis pair; a marginal mismatch is
// reported, never silently passed.
MarginalMatchCheck marginal_match_check(const FiniteDistribution& d,
                                        const FiniteDistribution& d_prime,
                                        const Hypothesis& h,
                                        const Hypothesis& f);

struct RandomInstanceConfig {
  int instances = 200;
  int n_max = 5;
  int values_max = 3;
  int k_max = 2;
  int support_max = 12;
  int m_max = 6;
  Rat epsilon = Rat(1, 10);  // used by the shifted variant only
  std::uint64_t seed = 0;
};

struct IdentityEngineReport {
  int instances = 0;
  std::size_t hypotheses_checked = 0;
  std::size_t triggered = 0;  // shifted variant: members over the eps line
  std::size_t vacuous_instances = 0;
  std::size_t violations = 0;
  Rat min_margin;  // shifted variant: min Pr_D[h!=f] - alpha over triggered
};

// For every consistent h, builds D' matching D on A = Feat(h) u Feat(f)
// with freshly randomized conditionals elsewhere and asserts exact equality
// of train and test agreement.
IdentityEngineReport run_marginal_match(const RandomInstanceConfig& config);

// Random independent D'; for every consistent h with test disagreement
// >= eps, asserts train disagreement >= alpha_exact(D_A, D'_A)(eps).
IdentityEngineReport run_alpha_shift(const RandomInstanceConfig& config);

struct SubspaceTransferConfig {
  int instances = 100;
  int n_max = 4;
  int k_max = 2;
  int dictionary_max = 50;
  int support_max = 10;
  int m_max = 6;
  std::uint64_t seed = 0;
};

struct SubspaceTransferReport {
  int instances = 0;
  std::size_t candidates_checked = 0;
  std::size_t precondition_rejections = 0;  // expected 0: D' built to match
  std::size_t violations = 0;
};

// Random junta dictionaries with a planted truth; per consistent candidate,
// D' re-randomizes the components orthogonal to the joint span and the
// train/test agreement must match exactly.
SubspaceTransferReport run_subspace_transfer(const SubspaceTransferConfig& config);

// --- sample-complexity sweep -------------------------------------------------

struct SweepConfig {
  std::string scenario = "grue";   // "grue" | "xor_pixel"
  std::string class_mode = "sparse1";  // "sparse1" | "full"
  int time_grid = 16;
  int switch_index = 8;
  int test_min_time = -1;
  std::vector<std::size_t> m_grid = {0, 1, 2, 4, 8, 16, 32, 64, 128};
  std::size_t trials = 200;
  Rat delta = Rat(1, 10);
  Rat epsilon = Rat(1, 20);
  std::vector<double> bound_constants = {1.0};
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SweepRow {
  std::size_t m = 0;
  std::size_t trials = 0;
  // Order statistics of the per-trial worst consistent test error.
  Rat min_err, median_err, quantile_err, max_err;
  // Largest per-trial best consistent error; identically 0 in realizable
  // runs because the truth stays consistent.
  Rat best_max;
  std::size_t passed = 0;  // trials with worst error <= epsilon
  // Two-sided 95% Clopper-Pearson interval on the pass probability; these
  // are the only estimated fields in the row, everything else is exact.
  double pass_ci_low = 0.0;
  double pass_ci_high = 1.0;
};

struct SweepReport {
  SweepConfig config;
  int inner_vc = 1;
  std::vector<SweepRow> rows;
  // Smallest grid m whose (1 - delta)-quantile is <= epsilon.
  std::optional<std::size_t> smallest_m_meeting_target;
  // sparse_ood_sample_bound per requested constant C.
  std::vector<double> bound_values;
};

SweepReport sample_complexity_sweep(const SweepConfig& config);

// Empirical quantile as an order statistic: the ceil(level * count)-th
// smallest value (level in (0, 1]).
Rat order_statistic_quantile(std::vector<Rat> values, const Rat& level);

struct BinomialInterval {
  double low = 0.0;
  double high = 1.0;
};

// Two-sided Clopper-Pearson interval.
BinomialInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                 double confidence = 0.95);

}  // namespace oodlab
