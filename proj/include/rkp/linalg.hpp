#pragma once
#include <vector>

#include "rkp/types.hpp"

namespace rkp {

// Determinant by partial-pivot elimination. Throws ShapeError if non-square.
double det(const Mat& m);

// Gram matrix: entry (i,j) = a[i] . b[j]. Throws ShapeError on dim mismatch.
Mat gram(const std::vector<Vec>& a, const std::vector<Vec>& b);

// Classical Gram-Schmidt with one re-orthogonalization pass on the columns
// of an n x 3 matrix. Pivot tolerance is relative to the input column norm.
// Throws DegenerateInput when the columns are (numerically) dependent.
Mat orthonormalize(const Mat& columns, double tol = 1e-12);

// Levi-Civita bracket of n-1 vectors in R^n:
// [a_1 : ... : a_{n-1}]_i = (-1)^{i+1} det(minor deleting row i), i 1-based.
// Output is orthogonal to every input and |output|^2 = det(gram(inputs)).
Vec bracket(const std::vector<Vec>& vectors);

// Signed solid angle of the spherical triangle spanned by a, b, c in R^3:
// 2 atan2(det[a,b,c], |a||b||c| + (a.b)|c| + (c.a)|b| + (b.c)|a|).
double solid_angle(const Vec& a, const Vec& b, const Vec& c);

} // namespace rkp
