#include "oodlab/alpha.hpp"

#include "oodlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace oodlab {

namespace {

struct Item {
  StructuredPoint point;
  Rat p;  // D-mass (objective)
  Rat q;  // D'-mass (constraint)
};

struct Presolved {
  std::vector<StructuredPoint> forced;  // p = 0, q > 0: free constraint mass
  Rat forced_q;
  std::vector<Item> items;  // p > 0, q > 0
};

void validate_query(const AlphaQuery& query) {
  if (!(query.d.space() == query.d_prime.space()))
    throw ValidationError("domain-mismatch",
                          "alpha query distributions must share one space");
  if (query.epsilon < 0 || query.epsilon > 1)
    throw ValidationError("parameter", "epsilon must lie in [0, 1]");
}

Presolved presolve(const AlphaQuery& query) {
  // Union of supports keyed by point; absent mass is exactly zero.
  std::map<StructuredPoint, std::pair<Rat, Rat>> mass;
  for (const auto& a : query.d.atoms()) mass[a.point].first = a.p;
  for (const auto& a : query.d_prime.atoms()) mass[a.point].second = a.p;

  Presolved out;
  out.forced_q = 0;
  for (auto& [pt, pq] : mass) {
    const auto& [p, q] = pq;
    if (q == 0) continue;  // cost without constraint value: never optimal
    if (p == 0) {
      out.forced.push_back(pt);
      out.forced_q += q;
    } else {
      out.items.push_back(Item{pt, p, q});
    }
  }
  return out;
}

// Ascending by p/q (cheapest constraint mass first), ties broken by point
// order for determinism.
void sort_by_ratio(std::vector<Item>& items) {
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    const Rat lhs = a.p * b.q;
    const Rat rhs = b.p * a.q;
    if (lhs != rhs) return lhs < rhs;
    return a.point < b.point;
  });
}

struct FractionalFill {
  Rat cost;
  std::size_t full_items;     // items taken whole, prefix of sorted order
  bool feasible = true;
  bool used_partial = false;  // whether a fractional piece was needed
};

// Cheapest fractional cover of `need` using items[from..): a prefix of the
// ratio-sorted suffix plus at most one fractional piece.
FractionalFill fractional_fill(const std::vector<Item>& items,
                               std::size_t from, const Rat& need) {
  FractionalFill fill;
  fill.cost = 0;
  fill.full_items = 0;
  if (need <= 0) return fill;
  Rat remaining = need;
  for (std::size_t i = from; i < items.size(); ++i) {
    if (items[i].q >= remaining) {
      fill.cost += remaining * items[i].p / items[i].q;
      fill.used_partial = items[i].q > remaining;
      if (!fill.used_partial) ++fill.full_items;
      return fill;
    }
    fill.cost += items[i].p;
    remaining -= items[i].q;
    ++fill.full_items;
  }
  fill.feasible = false;
  return fill;
}

struct KnapsackSolution {
  Rat cost;
  std::vector<std::size_t> chosen;  // indices into the sorted item list
  std::uint64_t nodes = 0;
  std::string solver;
};

// All equal constraint masses: the optimum takes the ceil(need/q) cheapest
// objective masses.
std::optional<KnapsackSolution> equal_q_shortcut(const std::vector<Item>& items,
                                                 const Rat& need) {
  for (const auto& it : items)
    if (it.q != items.front().q) return std::nullopt;
  const Rat q = items.front().q;
  const BigInt count = int_ceil_div(boost::multiprecision::numerator(need) *
                                        boost::multiprecision::denominator(q),
                                    boost::multiprecision::denominator(need) *
                                        boost::multiprecision::numerator(q));
  const std::size_t k = count.convert_to<std::size_t>();
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (items[a].p != items[b].p) return items[a].p < items[b].p;
    return items[a].point < items[b].point;
  });
  KnapsackSolution sol;
  sol.cost = 0;
  sol.solver = "equal-weight";
  for (std::size_t i = 0; i < k; ++i) {
    sol.cost += items[order[i]].p;
    sol.chosen.push_back(order[i]);
  }
  return sol;
}

// All equal objective masses: cost is proportional to the count, so the
// optimum is the smallest prefix of the descending-q order covering `need`.
std::optional<KnapsackSolution> equal_p_shortcut(const std::vector<Item>& items,
                                                 const Rat& need) {
  for (const auto& it : items)
    if (it.p != items.front().p) return std::nullopt;
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (items[a].q != items[b].q) return items[a].q > items[b].q;
    return items[a].point < items[b].point;
  });
  KnapsackSolution sol;
  sol.cost = 0;
  sol.solver = "equal-cost";
  Rat covered = 0;
  for (std::size_t i = 0; i < order.size() && covered < need; ++i) {
    covered += items[order[i]].q;
    sol.cost += items[order[i]].p;
    sol.chosen.push_back(order[i]);
  }
  return sol;
}

class BranchAndBound {
 public:
  BranchAndBound(const std::vector<Item>& items, Rat need,
                 std::uint64_t node_budget)
      : items_(items), need_(std::move(need)), budget_(node_budget) {}

  KnapsackSolution solve() {
    // Greedy integral cover seeds the incumbent.
    {
      Rat covered = 0, cost = 0;
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < items_.size() && covered < need_; ++i) {
        covered += items_[i].q;
        cost += items_[i].p;
        chosen.push_back(i);
      }
      best_cost_ = cost;
      best_chosen_ = std::move(chosen);
    }
    path_.clear();
    descend(0, Rat(0), need_);
    KnapsackSolution sol;
    sol.cost = best_cost_;
    sol.chosen = best_chosen_;
    sol.nodes = nodes_;
    sol.solver = "branch-and-bound";
    return sol;
  }

 private:
  void descend(std::size_t idx, const Rat& cost, const Rat& remaining) {
    if (++nodes_ > budget_)
      throw SizeCapError(
          "alpha search exceeded its node budget; use alpha_bounds");
    if (remaining <= 0) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_chosen_ = path_;
      }
      return;
    }
    if (idx >= items_.size()) return;
    const FractionalFill fill = fractional_fill(items_, idx, remaining);
    if (!fill.feasible) return;
    if (cost + fill.cost >= best_cost_) return;  // cannot strictly improve

    // Include first: follows the greedy descent, finds strong incumbents
    // early.
    path_.push_back(idx);
    descend(idx + 1, cost + items_[idx].p, remaining - items_[idx].q);
    path_.pop_back();
    descend(idx + 1, cost, remaining);
  }

  const std::vector<Item>& items_;
  Rat need_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Rat best_cost_;
  std::vector<std::size_t> best_chosen_;
  std::vector<std::size_t> path_;
};

}  // namespace

AlphaResult alpha_exact(const AlphaQuery& query, const AlphaOptions& options) {
  validate_query(query);
  const std::size_t dprime_support = query.d_prime.atoms().size();
  if (dprime_support > options.support_cap)
    throw SizeCapError("alpha_exact support " + std::to_string(dprime_support) +
                       " exceeds the cap of " +
                       std::to_string(options.support_cap) +
                       "; use alpha_bounds");

  Presolved pre = presolve(query);
  AlphaResult result;
  result.method = AlphaMethod::kExact;
  result.value = 0;
  result.witness_event = pre.forced;

  const Rat need = query.epsilon - pre.forced_q;
  if (need <= 0) {
    result.solver = "presolve";
    return result;
  }

  sort_by_ratio(pre.items);
  KnapsackSolution sol;
  if (auto s = equal_q_shortcut(pre.items, need)) {
    sol = std::move(*s);
  } else if (auto s2 = equal_p_shortcut(pre.items, need)) {
    sol = std::move(*s2);
  } else {
    BranchAndBound bb(pre.items, need, options.node_budget);
    sol = bb.solve();
  }

  result.value = sol.cost;
  result.nodes_explored = sol.nodes;
  result.solver = sol.solver;
  for (auto i : sol.chosen) result.witness_event.push_back(pre.items[i].point);
  std::sort(result.witness_event.begin(), result.witness_event.end());
  return result;
}

AlphaBounds alpha_bounds(const AlphaQuery& query) {
  validate_query(query);
  Presolved pre = presolve(query);
  AlphaBounds bounds;
  bounds.lower = 0;
  bounds.upper = 0;
  bounds.greedy_event = pre.forced;

  const Rat need = query.epsilon - pre.forced_q;
  if (need <= 0) {
    std::sort(bounds.greedy_event.begin(), bounds.greedy_event.end());
    return bounds;
  }

  sort_by_ratio(pre.items);
  const FractionalFill fill = fractional_fill(pre.items, 0, need);
  if (!fill.feasible)
    throw ValidationError("parameter",
                          "epsilon exceeds the total D'-mass of the space");
  bounds.lower = fill.cost;
  Rat upper = 0;
  const std::size_t greedy_count = fill.full_items + (fill.used_partial ? 1 : 0);
  for (std::size_t i = 0; i < greedy_count; ++i) {
    upper += pre.items[i].p;
    bounds.greedy_event.push_back(pre.items[i].point);
  }
  bounds.upper = upper;
  std::sort(bounds.greedy_event.begin(), bounds.greedy_event.end());
  return bounds;
}

double alpha_uniform_exponential(double k_range, double epsilon,
                                 AlphaDirection direction) {
  if (!(k_range > 0))
    throw ValidationError("parameter", "K must be positive");
  if (epsilon < 0 || epsilon > 1)
    throw ValidationError("parameter", "epsilon must lie in [0, 1]");
  const double tail = std::exp(-k_range);
  if (direction == AlphaDirection::kUniformToExponential) {
    // Events sit in (K, inf) for free; further mass is cheapest near 0.
    if (epsilon <= tail) return 0.0;
    return std::log(1.0 / (1.0 - epsilon + tail)) / k_range;
  }
  // Constraint mass lives on [0, K]; exponential cost is cheapest near K.
  return std::exp(-(1.0 - epsilon) * k_range) - tail;
}

DiscretizedPair discretize_uniform_exponential(double k_range, int bins) {
  if (!(k_range > 0))
    throw ValidationError("parameter", "K must be positive");
  if (bins < 2) throw ValidationError("parameter", "need at least 2 bins");

  // Bin j covers the Exp(1) quantile slice [j/N, (j+1)/N): exact mass 1/N.
  // Its uniform[0,K] mass is the clamped edge difference, rationalized
  // exactly from the double evaluation.
  auto space = make_space_indexed(1, bins);
  const Rat bin_mass(1, static_cast<unsigned>(bins));

  std::vector<Atom> exp_atoms;
  std::vector<Atom> uni_atoms;
  Rat uni_total = 0;
  std::size_t largest_idx = 0;
  Rat largest_mass = -1;
  for (int j = 0; j < bins; ++j) {
    const StructuredPoint pt{{j}};
    exp_atoms.push_back(Atom{pt, bin_mass});
    const double lo = -std::log1p(-static_cast<double>(j) / bins);
    const double hi = (j + 1 == bins)
                          ? std::numeric_limits<double>::infinity()
                          : -std::log1p(-static_cast<double>(j + 1) / bins);
    const double width =
        std::min(hi, k_range) - std::min(lo, k_range);
    if (width <= 0) continue;
    const Rat mass = rat_from_double(width / k_range);
    if (mass <= 0) continue;
    if (mass > largest_mass) {
      largest_mass = mass;
      largest_idx = uni_atoms.size();
    }
    uni_atoms.push_back(Atom{pt, mass});
    uni_total += mass;
  }
  // Fold the double-rounding residual into the largest atom so the masses
  // sum to exactly 1.
  uni_atoms[largest_idx].p += Rat(1) - uni_total;

  DiscretizedPair pair{
      FiniteDistribution::make(space, std::move(uni_atoms)),
      FiniteDistribution::make(space, std::move(exp_atoms)),
  };
  return pair;
}

ContrapositiveReport verify_alpha_contrapositive(
    const FiniteDistribution& d, const FiniteDistribution& d_prime,
    const Hypothesis& f, const HypothesisClass& cls, const Rat& epsilon,
    const AlphaOptions& options) {
  AlphaResult alpha = alpha_exact(AlphaQuery{d, d_prime, epsilon}, options);
  ContrapositiveReport report;
  report.alpha_value = alpha.value;
  report.min_margin = 1;
  bool any_triggered = false;
  for (const auto& h : cls.members()) {
    ++report.members_checked;
    const Rat err_prime = disagreement_probability(d_prime, h, f);
    if (err_prime < epsilon) continue;
    ++report.members_triggered;
    any_triggered = true;
    const Rat err_train = disagreement_probability(d, h, f);
    const Rat margin = err_train - alpha.value;
    if (margin < report.min_margin) report.min_margin = margin;
    if (err_train < alpha.value) ++report.violations;
  }
  if (!any_triggered) report.min_margin = 0;
  return report;
}

}  // namespace oodlab
