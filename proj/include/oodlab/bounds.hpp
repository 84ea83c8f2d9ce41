#pragma once

#include "oodlab/rational.hpp"

#include <limits>
#include <string>

namespace oodlab {
namespace bounds {

// Closed-form VC and sample-complexity calculators. Pure functions; exact
// integer parts (binomials, parameter counts) are computed in unbounded
// integers. Each formula containing a logarithm takes the base explicitly;
// the defaults follow the source statements (natural log for the union and
// sample bounds, base 2 for the parameterized-class bounds).

inline constexpr double kNaturalBase = 2.718281828459045235360287471;

// log_base(x)
double log_with_base(double x, double base);

// C * d / eps * log(1 / (delta * eps))
double blumer_sample_bound(double d, double epsilon, double delta, double c,
                           double log_base = kNaturalBase);

// Same shape with the amplification value in place of eps. alpha == 0 is
// reported as +infinity, matching the vacuous limit.
double alpha_sample_bound(double d, double alpha, double delta, double c,
                          double log_base = kNaturalBase);

// 4d + 10 log M for a union of M classes of VC-dimension <= d.
double union_vc_bound(double d, double m_classes,
                      double log_base = kNaturalBase);

// 4 d_k + 10 k log n for the k-sparse lifting.
double sparse_vc_bound(double d_k, double k, double n,
                       double log_base = kNaturalBase);

// C * (d_k + k log n) / rate * log(1 / (delta * rate)); rate is eps for the
// matched-marginal statement and alpha for the shifted one.
double sparse_ood_sample_bound(double d_k, double k, double n, double rate,
                               double delta, double c,
                               double log_base = kNaturalBase);

// 2 t C(n+l, l) log(t (t+1) C(n+l, l)) for boolean combinations of t
// polynomial threshold functions of degree <= l on R^n.
double semialgebraic_vc_bound(int t, int ell, int n, double log_base = 2.0);

// Number of parameters of a k-subspace junta with t degree-<=l PTFs:
// kn + t C(k+l, l).
BigInt parameter_count(int n, int ell, int k, int t);

// 2 (kn + t C(k+l, l)) log(12 t (l+1)).
double subspace_junta_vc_bound(int n, int ell, int k, int t,
                               double log_base = 2.0);

// 2 d log(12 t r) for t-combinations of degree-<=r parameter polynomials.
double t_combination_vc_bound(double d, double t, double r,
                              double log_base = 2.0);

// C(k+l, l), the number of monomials of degree <= l in k variables.
BigInt monomial_count(int k, int ell);

}  // namespace bounds
}  // namespace oodlab
