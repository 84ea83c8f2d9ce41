#include "oodlab/bounds.hpp"

#include "oodlab/errors.hpp"
#include "oodlab/hypothesis.hpp"

#include <cmath>

namespace oodlab {
namespace bounds {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError("parameter", message);
}

}  // namespace

double log_with_base(double x, double base) {
  require(x > 0, "logarithm argument must be positive");
  require(base > 0 && base != 1.0, "logarithm base must be positive and != 1");
  return std::log(x) / std::log(base);
}

double blumer_sample_bound(double d, double epsilon, double delta, double c,
                           double log_base) {
  require(d >= 1, "d must be >= 1");
  require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
  require(delta > 0 && delta <= 1, "delta must lie in (0, 1]");
  require(c > 0, "C must be positive");
  require(delta * epsilon < 1, "delta * epsilon must be < 1 for a positive log");
  return c * d / epsilon * log_with_base(1.0 / (delta * epsilon), log_base);
}

double alpha_sample_bound(double d, double alpha, double delta, double c,
                          double log_base) {
  require(d >= 1, "d must be >= 1");
  require(alpha >= 0 && alpha <= 1, "alpha must lie in [0, 1]");
  if (alpha == 0) return std::numeric_limits<double>::infinity();
  return blumer_sample_bound(d, alpha, delta, c, log_base);
}

double union_vc_bound(double d, double m_classes, double log_base) {
  require(d >= 0, "d must be >= 0");
  require(m_classes >= 1, "M must be >= 1");
  return 4.0 * d + 10.0 * log_with_base(m_classes, log_base);
}

double sparse_vc_bound(double d_k, double k, double n, double log_base) {
  require(d_k >= 0, "d_k must be >= 0");
  require(k >= 1 && n >= 1 && k <= n, "need 1 <= k <= n");
  if (n == 1) return 4.0 * d_k;  // log 1 = 0 regardless of base
  return 4.0 * d_k + 10.0 * k * log_with_base(n, log_base);
}

double sparse_ood_sample_bound(double d_k, double k, double n, double rate,
                               double delta, double c, double log_base) {
  require(d_k >= 0, "d_k must be >= 0");
  require(k >= 1 && n >= 1 && k <= n, "need 1 <= k <= n");
  require(rate > 0 && rate <= 1, "rate must lie in (0, 1]");
  require(delta > 0 && delta <= 1, "delta must lie in (0, 1]");
  require(c > 0, "C must be positive");
  require(delta * rate < 1, "delta * rate must be < 1 for a positive log");
  const double capacity =
      d_k + (n == 1 ? 0.0 : k * log_with_base(n, log_base));
  return c * capacity / rate * log_with_base(1.0 / (delta * rate), log_base);
}

double semialgebraic_vc_bound(int t, int ell, int n, double log_base) {
  require(t >= 1 && ell >= 1 && n >= 1, "need t, l, n >= 1");
  const BigInt monomials = monomial_count(n, ell);
  const double mono = monomials.convert_to<double>();
  return 2.0 * t * mono *
         log_with_base(static_cast<double>(t) * (t + 1) * mono, log_base);
}

BigInt parameter_count(int n, int ell, int k, int t) {
  require(k >= 1 && n >= 1 && k <= n, "need 1 <= k <= n");
  require(t >= 1 && ell >= 1, "need t, l >= 1");
  return BigInt(k) * n + BigInt(t) * monomial_count(k, ell);
}

double subspace_junta_vc_bound(int n, int ell, int k, int t, double log_base) {
  const BigInt d = parameter_count(n, ell, k, t);
  return t_combination_vc_bound(d.convert_to<double>(), t, ell + 1, log_base);
}

double t_combination_vc_bound(double d, double t, double r, double log_base) {
  require(d >= 1 && t >= 1 && r >= 1, "need d, t, r >= 1");
  return 2.0 * d * log_with_base(12.0 * t * r, log_base);
}

BigInt monomial_count(int k, int ell) {
  require(k >= 0 && ell >= 0, "need k, l >= 0");
  return binomial(BigInt(k) + ell, BigInt(ell));
}

}  // namespace bounds
}  // namespace oodlab
