#pragma once

#include "oodlab/distribution.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oodlab {

// Worst-case probability amplification between two distributions on one
// space: alpha(eps) = min over events E with Pr_{D'}[E] >= eps of Pr_D[E].
// Events are deterministic subsets of atoms.
struct AlphaQuery {
  FiniteDistribution d;
  FiniteDistribution d_prime;
  Rat epsilon;
};

enum class AlphaMethod { kExact, kGreedyBounds };

struct AlphaResult {
  Rat value;
  std::vector<StructuredPoint> witness_event;
  AlphaMethod method = AlphaMethod::kExact;
  // Diagnostics: search effort and which solver closed the instance.
  std::uint64_t nodes_explored = 0;
  std::string solver;
};

struct AlphaOptions {
  // Cap on the number of atoms with positive D'-mass.
  std::size_t support_cap = 22;
  // Branch-and-bound node budget; exceeding it raises a size-cap error.
  std::uint64_t node_budget = 10'000'000;
};

// Exact optimum with a minimizing witness. Atoms with Pr_{D'} = 0 never
// enter the witness; atoms with Pr_D = 0 and Pr_{D'} > 0 always do. The
// residual 0/1 knapsack is closed by an equal-weight shortcut when either
// side's masses are all equal, otherwise by branch-and-bound with a
// fractional-relaxation lower bound.
AlphaResult alpha_exact(const AlphaQuery& query,
                        const AlphaOptions& options = {});

struct AlphaBounds {
  Rat lower;  // fractional-relaxation optimum
  Rat upper;  // cost of the corresponding greedy subset
  std::vector<StructuredPoint> greedy_event;
};

// Scalable sandwich: lower <= alpha_exact <= upper.
AlphaBounds alpha_bounds(const AlphaQuery& query);

enum class AlphaDirection {
  kUniformToExponential,  // D = uniform[0,K], D' = Exp(1)
  kExponentialToUniform,  // D = Exp(1),       D' = uniform[0,K]
};

// Closed form for the uniform[0,K] / Exp(1) pair.
double alpha_uniform_exponential(double k_range, double epsilon,
                                 AlphaDirection direction);

// Equal-D'-mass discretization of the pair for cross-checking the closed
// form: bin j of the Exp(1) axis carries mass exactly 1/bins; the uniform
// masses are the exact dyadic values of their double evaluations, with the
// rounding residual folded into the largest atom.
struct DiscretizedPair {
  FiniteDistribution uniform_part;
  FiniteDistribution exponential_part;
};
DiscretizedPair discretize_uniform_exponential(double k_range, int bins);

struct ContrapositiveReport {
  std::size_t members_checked = 0;
  // Members whose D'-disagreement with f reaches epsilon.
  std::size_t members_triggered = 0;
  std::size_t violations = 0;
  Rat alpha_value;
  // Smallest Pr_D[h != f] - alpha over triggered members (nonnegative when
  // the bound holds everywhere).
  Rat min_margin;
};

// For every h in the class with Pr_{D'}[h != f] >= eps, checks
// Pr_D[h != f] >= alpha_exact(eps).
ContrapositiveReport verify_alpha_contrapositive(
    const FiniteDistribution& d, const FiniteDistribution& d_prime,
    const Hypothesis& f, const HypothesisClass& cls, const Rat& epsilon,
    const AlphaOptions& options = {});

}  // namespace oodlab
