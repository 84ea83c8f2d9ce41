#pragma once

#include "oodlab/rational.hpp"

#include <vector>

namespace oodlab {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major
using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

// --- exact rational path ------------------------------------------------

Rat dot(const RatVec& a, const RatVec& b);

// Gram-Schmidt without normalization: pairwise-orthogonal rational vectors
// spanning the row space; exactly-zero residuals are dropped.
RatMat rational_orthogonal_basis(const RatMat& rows);

// Orthogonal projection of x onto the span of a pairwise-orthogonal basis.
RatVec rational_project(const RatVec& x, const RatMat& orthogonal_basis);

// Exact rank by Gaussian elimination.
int rational_rank(RatMat m);

// --- floating path --------------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

// Orthonormal basis of the row space via modified Gram-Schmidt with
// norm-based pivoting and one re-orthogonalization pass. A residual is kept
// while its norm is >= tol relative to the largest input row norm.
Mat orthonormal_basis(const Mat& rows, double tol = 1e-10);

// Projection onto the span of an orthonormal basis.
Vec project(const Vec& x, const Mat& orthonormal_basis);

Vec to_double(const RatVec& v);
Mat to_double(const RatMat& m);

}  // namespace oodlab
