#pragma once

#include "oodlab/dyadic.hpp"
#include "oodlab/linalg.hpp"
#include "oodlab/rational.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace oodlab {

// --- inner functions g: R^k -> {0,1} ---------------------------------------

// 1 iff w . u >= threshold. The boundary maps to 1: the sign convention at
// zero is fixed class-wide so shattering counts are well defined.
struct Halfspace {
  RatVec weights;
  Rat threshold;
};

struct Monomial {
  std::vector<int> exponents;  // one exponent per inner coordinate
  Rat coeff;
};

// Polynomial threshold function: 1 iff q(u) >= 0, deg q <= degree.
struct Ptf {
  int degree = 1;
  std::vector<Monomial> terms;
};

// b(p_1(u), ..., p_t(u)) for PTFs p_i and a boolean table b over t bits.
// Bit i of the table index is the output of ptfs[i].
struct BoolCombination {
  std::vector<Ptf> ptfs;
  std::vector<uint8_t> table;  // 2^t entries
};

// k = 1 only: 1 iff floor(u) is odd.
struct SquareWaveInner {};

using InnerFunction = std::variant<Halfspace, Ptf, BoolCombination, SquareWaveInner>;

// Evaluate an inner function on an exact rational input.
int evaluate_inner(const InnerFunction& g, const RatVec& u);
Rat evaluate_polynomial(const Ptf& q, const RatVec& u);

// --- the junta itself -------------------------------------------------------

// f(x) = g(W x) for a k x n matrix W. Entries are exact rationals, so
// evaluation and projection identities can be checked as equalities.
class SubspaceJunta {
 public:
  static SubspaceJunta make(RatMat w, InnerFunction inner,
                            std::string label = "");

  const RatMat& w() const { return w_; }
  const InnerFunction& inner() const { return inner_; }
  const std::string& label() const { return label_; }
  int k() const { return static_cast<int>(w_.size()); }
  int n() const { return static_cast<int>(w_.front().size()); }

  int evaluate(const RatVec& x) const;

 private:
  SubspaceJunta(RatMat w, InnerFunction inner, std::string label)
      : w_(std::move(w)), inner_(std::move(inner)), label_(std::move(label)) {}

  RatMat w_;
  InnerFunction inner_;
  std::string label_;
};

// --- measures on R^n --------------------------------------------------------

struct WeightedPoint {
  RatVec x;
  Rat p;

  bool operator==(const WeightedPoint&) const = default;
};

// Finitely supported measure with exact rational masses summing to 1.
class PointMassMeasure {
 public:
  static PointMassMeasure make(std::vector<WeightedPoint> atoms);

  const std::vector<WeightedPoint>& atoms() const { return atoms_; }
  int dimension() const {
    return atoms_.empty() ? 0 : static_cast<int>(atoms_.front().x.size());
  }

  // Image under an exact projection, canonically merged and sorted.
  PointMassMeasure pushforward_projection(const RatMat& orthogonal_basis) const;

  bool operator==(const PointMassMeasure&) const = default;

 private:
  explicit PointMassMeasure(std::vector<WeightedPoint> atoms)
      : atoms_(std::move(atoms)) {}
  std::vector<WeightedPoint> atoms_;
};

// --- operations -------------------------------------------------------------

// Orthonormal (floating) basis of Span(rows of W, rows of Wstar).
Mat joint_span(const RatMat& w, const RatMat& w_star, double tol = 1e-10);

// Exact orthogonal (not normalized) rational basis of the same span.
RatMat joint_span_exact(const RatMat& w, const RatMat& w_star);

struct TransferReport {
  bool precondition_ok = false;  // pushforwards of D and D' agree on A
  Rat agreement_d;
  Rat agreement_d_prime;
  bool equal = false;
};

// Checks the transfer identity Pr_D[h = f] == Pr_{D'}[h = f] under the
// matched-projection precondition; a pushforward mismatch is reported, not
// silently passed.
TransferReport transfer_identity_check(const SubspaceJunta& f,
                                       const SubspaceJunta& h,
                                       const PointMassMeasure& d,
                                       const PointMassMeasure& d_prime);

}  // namespace oodlab
