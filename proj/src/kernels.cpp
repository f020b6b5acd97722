#include "rkp/kernels.hpp"

#include <cmath>

#include "rkp/errors.hpp"
#include "rkp/linalg.hpp"

namespace rkp {

namespace {

void accumulate(double x, long long& n, double& mean, double& m2) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
}

double stderr_of(long long n, double m2) {
    if (n < 2) return 0.0;
    return std::sqrt((m2 / n) / n);
}

void check_ab(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || std::abs(a * a + b * b - 1.0) > 1e-10)
        throw InvalidInput("ab coordinates must satisfy a,b > 0, a^2+b^2 = 1");
}

} // namespace

double icn_kernel(const ConfigTriple& c) {
    const double n3 = c.a3.norm();
    if (n3 < 1e-300)
        throw DegenerateInput("icn_kernel: |a3| underflow");
    const Mat g = gram({c.a1, c.a2, c.a3}, {c.a1, c.a2, c.a3});
    const double d = det(g);
    return std::sqrt(std::max(d, 0.0)) / (n3 * n3 * n3);
}

double curvature_kernel(const Vec& d1, const Vec& d2) {
    const double n1sq = d1.squaredNorm();
    if (n1sq < 1e-300)
        throw DegenerateInput("curvature_kernel: |r'| underflow");
    const double g = n1sq * d2.squaredNorm() - std::pow(d1.dot(d2), 2);
    return std::sqrt(std::max(g, 0.0)) / n1sq;
}

double lk2_kernel(const ConfigPair& p, double guard) {
    const Vec &a1 = p.first.a1, &a2 = p.first.a2, &a3 = p.first.a3;
    const Vec &b1 = p.second.a1, &b2 = p.second.a2, &b3 = p.second.a3;
    const double x = a3.squaredNorm();
    const double y = b3.squaredNorm();
    const double z = a3.dot(b3);
    const double dsc = x * y - z * z;
    if (!(dsc / (x * y) > guard))
        throw NearSingular("lk2_kernel: discriminant below guard");
    const double g3 = det(gram({a1, a2, a3}, {b1, b2, b3}));
    Mat m4(4, 4);
    const Vec* rows[4] = {&a3, &b1, &b2, &b3};
    const Vec* cols[4] = {&b3, &a1, &a2, &a3};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m4(i, j) = rows[i]->dot(*cols[j]);
    const double g4 = det(m4);
    return (2.0 / M_PI) * (dsc * g3 + z * g4) /
           (x * y * dsc * std::sqrt(dsc));
}

MCEstimate lk2_oracle(const ConfigPair& p, long long n_samples,
                      std::uint64_t seed) {
    if (p.first.a1.size() != 4 || p.second.a1.size() != 4)
        throw ShapeError("lk2_oracle: ambient dimension must be 4");
    RandomStream rs(seed, 0);
    Mat ma(4, 4), mb(4, 4);
    ma.col(0) = p.first.a1;
    ma.col(1) = p.first.a2;
    ma.col(2) = p.first.a3;
    mb.col(0) = p.second.a1;
    mb.col(1) = p.second.a2;
    mb.col(2) = p.second.a3;
    long long n = 0, rejected = 0;
    double mean = 0.0, m2 = 0.0;
    for (long long s = 0; s < n_samples; ++s) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v(i) = rs.normal();
        const double nv = v.norm();
        if (nv < 1e-150) {
            ++rejected;
            continue;
        }
        v /= nv;
        const Vec pa = p.first.a3 - v.dot(p.first.a3) * v;
        const Vec pb = p.second.a3 - v.dot(p.second.a3) * v;
        const double den =
            std::pow(pa.norm(), 3) * std::pow(pb.norm(), 3);
        if (den < 1e-280) {
            ++rejected;
            continue;
        }
        ma.col(3) = v;
        mb.col(3) = v;
        accumulate(det(ma) * det(mb) / den, n, mean, m2);
    }
    if (rejected * 100 > n_samples)
        throw NearSingular("lk2_oracle: > 1% of samples underflowed");
    return {mean, stderr_of(n, m2), n, rejected, seed};
}

double ijkl_table(int i, int j, int k, int l, double a, double b) {
    check_ab(a, b);
    const double dd = a * a - b * b;
    const double denom = M_PI * std::sqrt(1.0 - dd * dd);
    auto in1 = [](int v) { return v == 1 || (v >= 3 && v <= 6); };
    auto in2 = [](int v) { return v >= 2 && v <= 6; };
    auto in3 = [](int v) { return v >= 3 && v <= 6; };
    // branches transcribed in the printed order; first match wins
    if (j == k && i == l && i != j && in1(i) && in1(j))
        return 2.0 * b * b / denom;
    if (i == k && j == l && i != j && in1(i) && in1(j))
        return -2.0 * b * b / denom;
    if (j == k && i == l && i != j && in2(i) && in2(j))
        return -2.0 * a * a / denom;
    if (i == k && j == l && i != j && in2(i) && in2(j))
        return 2.0 * a * a / denom;
    if ((l == 1 && j == 2 && i == k && in3(i)) ||
        (i == 1 && l == 2 && j == k && in3(j)) ||
        (k == 1 && i == 2 && j == l && in3(j)) ||
        (j == 1 && k == 2 && i == l && in3(i)))
        return 2.0 * a * b / denom;
    if ((j == 1 && l == 2 && i == k && in3(i)) ||
        (l == 1 && i == 2 && j == k && in3(j)) ||
        (i == 1 && k == 2 && j == l && in3(j)) ||
        (k == 1 && j == 2 && i == l && in3(i)))
        return -2.0 * a * b / denom;
    return 0.0;
}

double i33_coeff(int mn, double a, double b) {
    check_ab(a, b);
    const double a2 = a * a, b2 = b * b;
    switch (mn) {
        case 2:
            return 1.0 / (M_PI * a * b);
        case 4:
            return (1.0 + 4.0 * a2 * b2) / (9.0 * M_PI * a2 * a * b2 * b);
        case 6:
            return (9.0 * b2 * b2 + 2.0 * a2 * b2 * (5.0 + 16.0 * b2) +
                    a2 * a2 * (9.0 + 32.0 * b2 + 128.0 * b2 * b2)) /
                   (450.0 * M_PI * std::pow(a, 5) * std::pow(b, 5));
        case 8:
            return (15.0 * std::pow(b2, 3) +
                    3.0 * a2 * b2 * b2 * (7.0 + 20.0 * b2) +
                    3.0 * std::pow(a2, 3) * (1.0 + 4.0 * b2) *
                        (5.0 + 64.0 * b2 * b2) +
                    a2 * a2 * b2 *
                        (21.0 + 56.0 * b2 + 192.0 * b2 * b2)) /
                   (3675.0 * M_PI * std::pow(a, 7) * std::pow(b, 7));
        default:
            throw Unsupported("i33_coeff: m+n must be in {2,4,6,8}");
    }
}

MCEstimate icn_calibration(int n, long long n_frames, std::uint64_t seed) {
    if (n < 4)
        throw InvalidInput("icn_calibration: need ambient dim >= 4");
    RandomStream rs(seed, 0);
    long long used = 0, rejected = 0;
    double mean = 0.0, m2 = 0.0;
    for (long long s = 0; s < n_frames; ++s) {
        Mat u(n, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 3; ++j) u(i, j) = rs.normal();
        Mat f;
        try {
            f = orthonormalize(u);
        } catch (const DegenerateInput&) {
            ++rejected;
            continue;
        }
        // F^T [e1 e2 e3] is just the first three rows of F
        Mat g = f.topRows(3).transpose();
        const double d3 = f.row(2).norm(); // |F^T e3|
        if (d3 < 1e-100) {
            ++rejected;
            continue;
        }
        accumulate(std::abs(det(g)) / (d3 * d3 * d3), used, mean, m2);
    }
    return {mean, stderr_of(used, m2), used, rejected, seed};
}

MCEstimate iij_oracle(int i, int j, int mn, double a, double b,
                      long long n_samples, std::uint64_t seed) {
    check_ab(a, b);
    const int np = mn + 2, nn = mn + 1;
    if (i < 1 || j < 1 || i > np || j > np)
        throw InvalidInput("iij_oracle: index out of range");
    RandomStream rs(seed, 16ull * i + j);
    long long n = 0, rejected = 0;
    double mean = 0.0, m2 = 0.0;
    Vec v(np);
    for (long long s = 0; s < n_samples; ++s) {
        for (int q = 0; q < np; ++q) v(q) = rs.normal();
        double tail = 0.0;
        for (int q = 2; q < np; ++q) tail += v(q) * v(q);
        const double km = std::pow(b * v(0) - a * v(1), 2) + tail;
        const double kp = std::pow(b * v(0) + a * v(1), 2) + tail;
        const double den =
            std::pow(km, 0.5 * nn) * std::pow(kp, 0.5 * nn);
        if (den < 1e-280) {
            ++rejected;
            continue;
        }
        const double f = std::pow(v.squaredNorm(), mn) * v(i - 1) *
                         v(j - 1) / den;
        accumulate(f, n, mean, m2);
    }
    if (rejected * 100 > n_samples)
        throw NearSingular("iij_oracle: > 1% of samples underflowed");
    return {mean, stderr_of(n, m2), n, rejected, seed};
}

MCEstimate higher_oracle(const std::vector<Vec>& a, const std::vector<Vec>& ap,
                         int mn, long long n_samples, std::uint64_t seed) {
    const int nn = mn + 1, np = mn + 2;
    if (static_cast<int>(a.size()) != nn || static_cast<int>(ap.size()) != nn)
        throw ShapeError("higher_oracle: need m+n+1 vectors per side");
    for (const auto& v : a)
        if (v.size() != np) throw ShapeError("higher_oracle: bad dimension");
    for (const auto& v : ap)
        if (v.size() != np) throw ShapeError("higher_oracle: bad dimension");
    RandomStream rs(seed, 0);
    Mat ma(np, np), mb(np, np);
    for (int c = 0; c < nn; ++c) {
        ma.col(c) = a[c];
        mb.col(c) = ap[c];
    }
    const Vec an = a[nn - 1], anp = ap[nn - 1];
    long long n = 0, rejected = 0;
    double mean = 0.0, m2 = 0.0;
    for (long long s = 0; s < n_samples; ++s) {
        Vec v(np);
        for (int q = 0; q < np; ++q) v(q) = rs.normal();
        const double nv = v.norm();
        if (nv < 1e-150) {
            ++rejected;
            continue;
        }
        v /= nv;
        const Vec pa = an - v.dot(an) * v;
        const Vec pb = anp - v.dot(anp) * v;
        const double den = std::pow(pa.norm(), nn) * std::pow(pb.norm(), nn);
        if (den < 1e-280) {
            ++rejected;
            continue;
        }
        ma.col(np - 1) = v;
        mb.col(np - 1) = v;
        accumulate(det(ma) * det(mb) / den, n, mean, m2);
    }
    if (rejected * 100 > n_samples)
        throw NearSingular("higher_oracle: > 1% of samples underflowed");
    return {mean, stderr_of(n, m2), n, rejected, seed};
}

HigherKernelResult higher_kernel(const std::vector<Vec>& a,
                                 const std::vector<Vec>& ap, int mn,
                                 long long mc_samples, std::uint64_t seed,
                                 double guard) {
    if (mn != 2 && mn != 4 && mn != 6 && mn != 8)
        throw Unsupported("higher_kernel: m+n must be in {2,4,6,8}");
    const int nn = mn + 1, np = mn + 2;
    if (static_cast<int>(a.size()) != nn || static_cast<int>(ap.size()) != nn)
        throw ShapeError("higher_kernel: need m+n+1 vectors per side");
    for (const auto& v : a)
        if (v.size() != np) throw ShapeError("higher_kernel: bad dimension");
    for (const auto& v : ap)
        if (v.size() != np) throw ShapeError("higher_kernel: bad dimension");

    const Vec& an = a[nn - 1];
    const Vec& anp = ap[nn - 1];
    const double x = an.squaredNorm(), y = anp.squaredNorm();
    const double z = an.dot(anp);
    const double dsc = x * y - z * z;
    if (!(dsc / (x * y) > guard))
        throw NearSingular("higher_kernel: discriminant below guard");

    const Vec q = an / std::sqrt(x);
    const Vec qp = anp / std::sqrt(y);
    Vec b1 = q + qp, b2 = q - qp;
    b1 /= b1.norm();
    b2 /= b2.norm();
    const double ca = q.dot(b1), cb = q.dot(b2);

    const Vec al = bracket(a);
    const Vec alp = bracket(ap);
    // sum over the orthonormal completion of {b1, b2}
    const double s3 =
        al.dot(alp) - b1.dot(al) * b1.dot(alp) - b2.dot(al) * b2.dot(alp);
    const double denom = std::pow(x, 0.5 * nn) * std::pow(y, 0.5 * nn);
    const double i33 = i33_coeff(mn, ca, cb);

    HigherKernelResult out;
    if (mn == 2) {
        // the I11 and I22 terms cancel exactly here
        out.value = i33 * s3 / denom;
        return out;
    }
    out.i11 = iij_oracle(1, 1, mn, ca, cb, mc_samples, seed);
    out.i22 = iij_oracle(2, 2, mn, ca, cb, mc_samples, seed);
    const double t1 = b1.dot(al) * b1.dot(alp);
    const double t2 = b2.dot(al) * b2.dot(alp);
    out.value =
        (out.i11.mean * t1 + out.i22.mean * t2 + i33 * s3) / denom;
    out.stderr_ =
        (std::abs(t1) * out.i11.stderr_ + std::abs(t2) * out.i22.stderr_) /
        denom;
    return out;
}

IjklReport ijkl_consistency_report(double a, double b, double tol) {
    check_ab(a, b);
    IjklReport rep;
    const int dim = 6;
    std::vector<Vec> e(dim + 1);
    for (int i = 1; i <= dim; ++i) {
        e[i] = Vec::Zero(dim);
        e[i](i - 1) = 1.0;
    }
    Vec a3 = a * e[1] + b * e[2];
    Vec a3p = a * e[1] - b * e[2];
    const double dd = a * a - b * b;
    const double denom = M_PI * std::sqrt(1.0 - dd * dd);
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j)
            for (int k = 1; k <= 6; ++k)
                for (int l = 1; l <= 6; ++l) {
                    ++rep.tuples_checked;
                    // count how many branches claim this tuple
                    auto in1 = [](int v) { return v == 1 || (v >= 3 && v <= 6); };
                    auto in2 = [](int v) { return v >= 2 && v <= 6; };
                    auto in3 = [](int v) { return v >= 3 && v <= 6; };
                    int branches = 0;
                    std::vector<double> vals;
                    if (j == k && i == l && i != j && in1(i) && in1(j)) {
                        ++branches;
                        vals.push_back(2.0 * b * b / denom);
                    }
                    if (i == k && j == l && i != j && in1(i) && in1(j)) {
                        ++branches;
                        vals.push_back(-2.0 * b * b / denom);
                    }
                    if (j == k && i == l && i != j && in2(i) && in2(j)) {
                        ++branches;
                        vals.push_back(-2.0 * a * a / denom);
                    }
                    if (i == k && j == l && i != j && in2(i) && in2(j)) {
                        ++branches;
                        vals.push_back(2.0 * a * a / denom);
                    }
                    if ((l == 1 && j == 2 && i == k && in3(i)) ||
                        (i == 1 && l == 2 && j == k && in3(j)) ||
                        (k == 1 && i == 2 && j == l && in3(j)) ||
                        (j == 1 && k == 2 && i == l && in3(i))) {
                        ++branches;
                        vals.push_back(2.0 * a * b / denom);
                    }
                    if ((j == 1 && l == 2 && i == k && in3(i)) ||
                        (l == 1 && i == 2 && j == k && in3(j)) ||
                        (i == 1 && k == 2 && j == l && in3(j)) ||
                        (k == 1 && j == 2 && i == l && in3(i))) {
                        ++branches;
                        vals.push_back(-2.0 * a * b / denom);
                    }
                    if (branches > 1) ++rep.overlapping_branches;
                    ConfigPair p{{e[i], e[j], a3}, {e[k], e[l], a3p}};
                    const double kernel = lk2_kernel(p);
                    const double table = ijkl_table(i, j, k, l, a, b);
                    if (std::abs(kernel - table) > tol)
                        ++rep.kernel_mismatches;
                }
    return rep;
}

} // namespace rkp
