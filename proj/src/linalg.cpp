#include "rkp/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "rkp/errors.hpp"

namespace rkp {

double det(const Mat& m) {
    if (m.rows() != m.cols())
        throw ShapeError("det: matrix is not square");
    const int n = static_cast<int>(m.rows());
    Mat a = m;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            d = -d;
        }
        d *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

Mat gram(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty())
        throw ShapeError("gram: empty input");
    const auto dim = a[0].size();
    for (const auto& v : a)
        if (v.size() != dim) throw ShapeError("gram: dimension mismatch");
    for (const auto& v : b)
        if (v.size() != dim) throw ShapeError("gram: dimension mismatch");
    Mat g(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            g(i, j) = a[i].dot(b[j]);
    return g;
}

Mat orthonormalize(const Mat& columns, double tol) {
    const int n = static_cast<int>(columns.rows());
    const int k = static_cast<int>(columns.cols());
    Mat q(n, k);
    for (int j = 0; j < k; ++j) {
        Vec v = columns.col(j);
        const double input_norm = v.norm();
        // one re-orthogonalization pass controls drift of classical GS
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i)
                v -= q.col(i).dot(v) * q.col(i);
        const double nv = v.norm();
        if (nv <= tol * input_norm || nv == 0.0)
            throw DegenerateInput("orthonormalize: pivot below tolerance");
        q.col(j) = v / nv;
    }
    return q;
}

Vec bracket(const std::vector<Vec>& vectors) {
    if (vectors.empty())
        throw ShapeError("bracket: empty input");
    const int n = static_cast<int>(vectors[0].size());
    if (static_cast<int>(vectors.size()) != n - 1)
        throw ShapeError("bracket: need n-1 vectors in R^n");
    for (const auto& v : vectors)
        if (v.size() != n) throw ShapeError("bracket: dimension mismatch");
    Mat m(n, n - 1); // columns are the input vectors
    for (int j = 0; j < n - 1; ++j) m.col(j) = vectors[j];
    Vec out(n);
    Mat minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int row = 0; row < n; ++row) {
            if (row == i) continue;
            minor.row(r++) = m.row(row);
        }
        out(i) = ((i % 2 == 0) ? 1.0 : -1.0) * det(minor);
    }
    return out;
}

double solid_angle(const Vec& a, const Vec& b, const Vec& c) {
    if (a.size() != 3 || b.size() != 3 || c.size() != 3)
        throw ShapeError("solid_angle: arguments must be in R^3");
    const double na = a.norm(), nb = b.norm(), nc = c.norm();
    if (na < 1e-300 || nb < 1e-300 || nc < 1e-300)
        throw DegenerateInput("solid_angle: zero-length argument");
    Mat m(3, 3);
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    const double num = det(m);
    const double den =
        na * nb * nc + a.dot(b) * nc + c.dot(a) * nb + b.dot(c) * na;
    return 2.0 * std::atan2(num, den);
}

} // namespace rkp
