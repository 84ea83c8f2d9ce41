#include "oodlab/subspace.hpp"

#include "oodlab/errors.hpp"

#include <algorithm>
#include <map>

namespace oodlab {

Rat evaluate_polynomial(const Ptf& q, const RatVec& u) {
  Rat acc = 0;
  for (const auto& term : q.terms) {
    if (term.exponents.size() != u.size())
      throw ValidationError("dimension", "monomial arity mismatch");
    Rat value = term.coeff;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (int e = 0; e < term.exponents[i]; ++e) value *= u[i];
    acc += value;
  }
  return acc;
}

namespace {

void validate_ptf(const Ptf& q, int k) {
  for (const auto& term : q.terms) {
    if (static_cast<int>(term.exponents.size()) != k)
      throw ValidationError("dimension", "monomial arity != k");
    int total = 0;
    for (int e : term.exponents) {
      if (e < 0) throw ValidationError("parameter", "negative exponent");
      total += e;
    }
    if (total > q.degree)
      throw ValidationError("parameter",
                            "monomial degree exceeds the declared PTF degree");
  }
}

}  // namespace

int evaluate_inner(const InnerFunction& g, const RatVec& u) {
  return std::visit(
      [&u](const auto& inner) -> int {
        using T = std::decay_t<decltype(inner)>;
        if constexpr (std::is_same_v<T, Halfspace>) {
          return dot(inner.weights, u) >= inner.threshold ? 1 : 0;
        } else if constexpr (std::is_same_v<T, Ptf>) {
          return evaluate_polynomial(inner, u) >= 0 ? 1 : 0;
        } else if constexpr (std::is_same_v<T, BoolCombination>) {
          std::size_t index = 0;
          for (std::size_t i = 0; i < inner.ptfs.size(); ++i) {
            const int bit = evaluate_polynomial(inner.ptfs[i], u) >= 0 ? 1 : 0;
            index |= static_cast<std::size_t>(bit) << i;
          }
          return inner.table[index];
        } else {
          if (u.size() != 1)
            throw ValidationError("dimension", "square wave needs k = 1");
          const BigInt f = rat_floor(u[0]);
          return f % 2 != 0 ? 1 : 0;
        }
      },
      g);
}

SubspaceJunta SubspaceJunta::make(RatMat w, InnerFunction inner,
                                  std::string label) {
  if (w.empty()) throw ValidationError("dimension", "W must have k >= 1 rows");
  const std::size_t n = w.front().size();
  if (n == 0) throw ValidationError("dimension", "W must have n >= 1 columns");
  for (const auto& row : w) {
    if (row.size() != n)
      throw ValidationError("dimension", "ragged matrix rows");
    bool zero = true;
    for (const auto& c : row)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero)
      throw ValidationError("dimension", "W must not contain an all-zero row");
  }
  if (w.size() > n)
    throw ValidationError("dimension", "need k <= n");
  const int k = static_cast<int>(w.size());
  if (const auto* hs = std::get_if<Halfspace>(&inner)) {
    if (static_cast<int>(hs->weights.size()) != k)
      throw ValidationError("dimension", "halfspace arity != k");
  } else if (const auto* ptf = std::get_if<Ptf>(&inner)) {
    validate_ptf(*ptf, k);
  } else if (const auto* combo = std::get_if<BoolCombination>(&inner)) {
    if (combo->ptfs.empty())
      throw ValidationError("parameter", "boolean combination needs t >= 1");
    if (combo->ptfs.size() >= 8 * sizeof(std::size_t))
      throw ValidationError("parameter", "too many PTFs");
    if (combo->table.size() != (std::size_t{1} << combo->ptfs.size()))
      throw ValidationError("parameter", "boolean table must have 2^t entries");
    for (auto b : combo->table)
      if (b > 1) throw ValidationError("parameter", "table entries must be bits");
    for (const auto& p : combo->ptfs) validate_ptf(p, k);
  } else {
    if (k != 1)
      throw ValidationError("dimension", "square wave inner needs k = 1");
  }
  return SubspaceJunta(std::move(w), std::move(inner), std::move(label));
}

int SubspaceJunta::evaluate(const RatVec& x) const {
  if (static_cast<int>(x.size()) != n())
    throw ValidationError("dimension", "input dimension != n");
  RatVec u;
  u.reserve(w_.size());
  for (const auto& row : w_) u.push_back(dot(row, x));
  return evaluate_inner(inner_, u);
}

PointMassMeasure PointMassMeasure::make(std::vector<WeightedPoint> atoms) {
  if (atoms.empty())
    throw ValidationError("measure", "measure needs at least one atom");
  const std::size_t dim = atoms.front().x.size();
  std::map<RatVec, Rat> merged;
  for (auto& a : atoms) {
    if (a.x.size() != dim)
      throw ValidationError("measure", "mixed-dimension atoms");
    if (a.p < 0) throw ValidationError("measure", "negative mass");
    if (a.p == 0) continue;
    merged[a.x] += a.p;
  }
  Rat total = 0;
  std::vector<WeightedPoint> canonical;
  for (auto& [x, p] : merged) {
    total += p;
    canonical.push_back(WeightedPoint{x, p});
  }
  if (total != 1)
    throw ValidationError("measure", "masses sum to " + rat_to_string(total) +
                                         ", expected exactly 1");
  return PointMassMeasure(std::move(canonical));
}

PointMassMeasure PointMassMeasure::pushforward_projection(
    const RatMat& orthogonal_basis) const {
  std::vector<WeightedPoint> projected;
  projected.reserve(atoms_.size());
  for (const auto& a : atoms_)
    projected.push_back(
        WeightedPoint{rational_project(a.x, orthogonal_basis), a.p});
  return make(std::move(projected));
}

Mat joint_span(const RatMat& w, const RatMat& w_star, double tol) {
  Mat rows = to_double(w);
  const Mat star = to_double(w_star);
  rows.insert(rows.end(), star.begin(), star.end());
  return orthonormal_basis(rows, tol);
}

RatMat joint_span_exact(const RatMat& w, const RatMat& w_star) {
  RatMat rows = w;
  rows.insert(rows.end(), w_star.begin(), w_star.end());
  return rational_orthogonal_basis(rows);
}

TransferReport transfer_identity_check(const SubspaceJunta& f,
                                       const SubspaceJunta& h,
                                       const PointMassMeasure& d,
                                       const PointMassMeasure& d_prime) {
  if (f.n() != h.n())
    throw ValidationError("dimension", "f and h have different ambient n");
  if (d.dimension() != f.n() || d_prime.dimension() != f.n())
    throw ValidationError("dimension", "measure dimension != n");

  TransferReport report;
  const RatMat basis = joint_span_exact(f.w(), h.w());
  report.precondition_ok = d.pushforward_projection(basis) ==
                           d_prime.pushforward_projection(basis);
  if (!report.precondition_ok) return report;

  Rat agree_d = 0;
  for (const auto& a : d.atoms())
    if (f.evaluate(a.x) == h.evaluate(a.x)) agree_d += a.p;
  Rat agree_dp = 0;
  for (const auto& a : d_prime.atoms())
    if (f.evaluate(a.x) == h.evaluate(a.x)) agree_dp += a.p;
  report.agreement_d = agree_d;
  report.agreement_d_prime = agree_dp;
  report.equal = agree_d == agree_dp;
  return report;
}

}  // namespace oodlab
