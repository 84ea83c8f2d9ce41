#include "oodlab/linalg.hpp"

#include "oodlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oodlab {

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw ValidationError("dimension", "dot product dimension mismatch");
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RatMat rational_orthogonal_basis(const RatMat& rows) {
  RatMat basis;
  for (const auto& row : rows) {
    RatVec residual = row;
    for (const auto& b : basis) {
      const Rat coeff = dot(residual, b) / dot(b, b);
      for (std::size_t i = 0; i < residual.size(); ++i)
        residual[i] -= coeff * b[i];
    }
    bool zero = true;
    for (const auto& c : residual)
      if (c != 0) {
        zero = false;
        break;
      }
    if (!zero) basis.push_back(std::move(residual));
  }
  return basis;
}

RatVec rational_project(const RatVec& x, const RatMat& orthogonal_basis) {
  RatVec out(x.size(), Rat(0));
  for (const auto& b : orthogonal_basis) {
    const Rat coeff = dot(x, b) / dot(b, b);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += coeff * b[i];
  }
  return out;
}

int rational_rank(RatMat m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const Rat factor = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] -= factor * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw ValidationError("dimension", "dot product dimension mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Mat orthonormal_basis(const Mat& rows, double tol) {
  double scale = 0;
  for (const auto& r : rows) scale = std::max(scale, norm(r));
  if (scale == 0) return {};

  Mat residuals = rows;
  Mat basis;
  while (true) {
    // Pivot on the residual with the largest norm.
    std::size_t best = residuals.size();
    double best_norm = tol * scale;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      const double n = norm(residuals[i]);
      if (n > best_norm) {
        best_norm = n;
        best = i;
      }
    }
    if (best == residuals.size()) break;

    Vec v = residuals[best];
    // Second orthogonalization pass tightens the basis against rounding.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const double c = dot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    const double vn = norm(v);
    if (vn < tol * scale) {
      residuals.erase(residuals.begin() + static_cast<std::ptrdiff_t>(best));
      continue;
    }
    for (auto& c : v) c /= vn;
    basis.push_back(v);
    residuals.erase(residuals.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& r : residuals) {
      const double c = dot(r, basis.back());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * basis.back()[i];
    }
  }
  return basis;
}

Vec project(const Vec& x, const Mat& orthonormal_basis) {
  Vec out(x.size(), 0.0);
  for (const auto& b : orthonormal_basis) {
    const double c = dot(x, b);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += c * b[i];
  }
  return out;
}

Vec to_double(const RatVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(rat_to_double(q));
  return out;
}

Mat to_double(const RatMat& m) {
  Mat out;
  out.reserve(m.size());
  for (const auto& r : m) out.push_back(to_double(r));
  return out;
}

}  // namespace oodlab
