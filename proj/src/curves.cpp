#include "rkp/curves.hpp"

#include <cmath>

#include "rkp/errors.hpp"

namespace rkp {

namespace {

void check_fourier(const std::vector<double>& c) {
    if (c.size() < 2)
        throw InvalidSpec("fourier: need at least one oscillatory coefficient");
    bool any = false;
    for (size_t k = 1; k < c.size(); ++k)
        if (c[k] != 0.0) any = true;
    if (!any)
        throw InvalidSpec("fourier: all oscillatory coefficients vanish");
}

// taper height and slope of strand i at parameter t (single strand only)
double taper_value(double t, int i, int k, double eps) {
    const double h = M_PI / (2.0 * k);
    const double lo = 2.0 * i * h, mid = lo + h, hi = mid + h;
    if (t >= lo && t < mid) return 2.0 * k * eps * (t - lo) / M_PI;
    if (t >= mid && t < hi) return 2.0 * k * eps * (hi - t) / M_PI;
    return 0.0;
}

double taper_slope(double t, int i, int k, double eps) {
    const double h = M_PI / (2.0 * k);
    const double lo = 2.0 * i * h, mid = lo + h, hi = mid + h;
    if (t >= lo && t < mid) return 2.0 * k * eps / M_PI;
    if (t >= mid && t < hi) return -2.0 * k * eps / M_PI;
    return 0.0;
}

} // namespace

SpaceCurve fourier_curve(const std::vector<double>& c) {
    check_fourier(c);
    const int n = static_cast<int>(c.size()) - 1;
    SpaceCurve s;
    s.dim = 2 * n + 1;
    s.period = 2.0 * M_PI;
    s.eval = [c, n, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        r(0) = c[0];
        for (int k = 1; k <= n; ++k) {
            r(2 * k - 1) = c[k] * std::cos(k * t);
            r(2 * k) = c[k] * std::sin(k * t);
        }
        return r;
    };
    s.deriv = [c, n, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        for (int k = 1; k <= n; ++k) {
            r(2 * k - 1) = -c[k] * k * std::sin(k * t);
            r(2 * k) = c[k] * k * std::cos(k * t);
        }
        return r;
    };
    s.deriv2 = [c, n, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        for (int k = 1; k <= n; ++k) {
            r(2 * k - 1) = -c[k] * k * k * std::cos(k * t);
            r(2 * k) = -c[k] * k * k * std::sin(k * t);
        }
        return r;
    };
    return s;
}

std::pair<SpaceCurve, SpaceCurve> orthogonal_fourier_pair(
    const std::vector<double>& c, const std::vector<double>& d) {
    check_fourier(c);
    check_fourier(d);
    const int n = static_cast<int>(std::max(c.size(), d.size())) - 1;
    const int dim = 4 * n + 2;
    // 0-based coordinates: r1 uses 0 and 4k-2, 4k-1; r2 uses 1 and 4k, 4k+1
    auto make = [dim, n](const std::vector<double>& coef, int base) {
        SpaceCurve s;
        s.dim = dim;
        s.period = 2.0 * M_PI;
        s.eval = [coef, n, dim, base](double t) {
            Vec r = Vec::Zero(dim);
            r(base) = coef[0];
            for (int k = 1; k <= n; ++k) {
                if (k >= static_cast<int>(coef.size())) break;
                r(4 * k - 2 + 2 * base) = coef[k] * std::cos(k * t);
                r(4 * k - 1 + 2 * base) = coef[k] * std::sin(k * t);
            }
            return r;
        };
        s.deriv = [coef, n, dim, base](double t) {
            Vec r = Vec::Zero(dim);
            for (int k = 1; k <= n; ++k) {
                if (k >= static_cast<int>(coef.size())) break;
                r(4 * k - 2 + 2 * base) = -coef[k] * k * std::sin(k * t);
                r(4 * k - 1 + 2 * base) = coef[k] * k * std::cos(k * t);
            }
            return r;
        };
        s.deriv2 = [coef, n, dim, base](double t) {
            Vec r = Vec::Zero(dim);
            for (int k = 1; k <= n; ++k) {
                if (k >= static_cast<int>(coef.size())) break;
                r(4 * k - 2 + 2 * base) = -coef[k] * k * k * std::cos(k * t);
                r(4 * k - 1 + 2 * base) = -coef[k] * k * k * std::sin(k * t);
            }
            return r;
        };
        return s;
    };
    return {make(c, 0), make(d, 1)};
}

SpaceCurve petal_curve(int k, double eps) {
    if (k < 3 || k % 2 == 0)
        throw InvalidSpec("petal: k must be odd and >= 3");
    if (eps <= 0.0)
        throw InvalidSpec("petal: eps must be positive");
    SpaceCurve s;
    s.dim = 2 + k;
    s.period = M_PI;
    for (int i = 0; i < 2 * k; ++i)
        s.breakpoints.push_back(i * M_PI / (2.0 * k));
    s.eval = [k, eps, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t);
        r(0) = ck * std::cos(t);
        r(1) = ck * std::sin(t);
        for (int i = 0; i < k; ++i) r(2 + i) = taper_value(t, i, k, eps);
        return r;
    };
    s.deriv = [k, eps, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        r(0) = -k * sk * std::cos(t) - ck * std::sin(t);
        r(1) = -k * sk * std::sin(t) + ck * std::cos(t);
        for (int i = 0; i < k; ++i) r(2 + i) = taper_slope(t, i, k, eps);
        return r;
    };
    s.deriv2 = [k, dim = s.dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        const double kk1 = 1.0 + static_cast<double>(k) * k;
        r(0) = -kk1 * ck * std::cos(t) + 2.0 * k * sk * std::sin(t);
        r(1) = -kk1 * ck * std::sin(t) - 2.0 * k * sk * std::cos(t);
        return r; // taper is piecewise linear
    };
    return s;
}

std::pair<SpaceCurve, SpaceCurve> petal_link_pair(int k, double eps) {
    if (k < 3 || k % 2 == 0)
        throw InvalidSpec("petal-pair: k must be odd and >= 3");
    if (eps <= 0.0)
        throw InvalidSpec("petal-pair: eps must be positive");
    const int dim = 2 + 2 * k;
    const double th = (k - 2) * M_PI / k;
    const double c = std::cos(th), sn = std::sin(th);
    std::vector<double> bps;
    for (int i = 0; i < 2 * k; ++i) bps.push_back(i * M_PI / (2.0 * k));

    SpaceCurve r1;
    r1.dim = dim;
    r1.period = M_PI;
    r1.breakpoints = bps;
    r1.eval = [k, eps, dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t);
        r(0) = ck * std::cos(t);
        r(1) = ck * std::sin(t);
        for (int i = 0; i < k; ++i) r(2 + i) = taper_value(t, i, k, eps);
        return r;
    };
    r1.deriv = [k, eps, dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        r(0) = -k * sk * std::cos(t) - ck * std::sin(t);
        r(1) = -k * sk * std::sin(t) + ck * std::cos(t);
        for (int i = 0; i < k; ++i) r(2 + i) = taper_slope(t, i, k, eps);
        return r;
    };
    r1.deriv2 = [k, dim](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        const double kk1 = 1.0 + static_cast<double>(k) * k;
        r(0) = -kk1 * ck * std::cos(t) + 2.0 * k * sk * std::sin(t);
        r(1) = -kk1 * ck * std::sin(t) - 2.0 * k * sk * std::cos(t);
        return r;
    };

    SpaceCurve r2;
    r2.dim = dim;
    r2.period = M_PI;
    r2.breakpoints = bps;
    r2.eval = [k, eps, dim, c, sn](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t);
        const double x = ck * std::cos(t), y = ck * std::sin(t);
        r(0) = c * x - sn * y;
        r(1) = sn * x + c * y;
        for (int i = 0; i < k; ++i)
            r(2 + k + i) = taper_value(t, i, k, eps);
        return r;
    };
    r2.deriv = [k, eps, dim, c, sn](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        const double dx = -k * sk * std::cos(t) - ck * std::sin(t);
        const double dy = -k * sk * std::sin(t) + ck * std::cos(t);
        r(0) = c * dx - sn * dy;
        r(1) = sn * dx + c * dy;
        for (int i = 0; i < k; ++i)
            r(2 + k + i) = taper_slope(t, i, k, eps);
        return r;
    };
    r2.deriv2 = [k, dim, c, sn](double t) {
        Vec r = Vec::Zero(dim);
        const double ck = std::cos(k * t), sk = std::sin(k * t);
        const double kk1 = 1.0 + static_cast<double>(k) * k;
        const double ddx = -kk1 * ck * std::cos(t) + 2.0 * k * sk * std::sin(t);
        const double ddy = -kk1 * ck * std::sin(t) - 2.0 * k * sk * std::cos(t);
        r(0) = c * ddx - sn * ddy;
        r(1) = sn * ddx + c * ddy;
        return r;
    };
    return {r1, r2};
}

std::vector<Vec> polyline_sample(const SpaceCurve& curve, int m) {
    if (m < 3)
        throw InvalidSpec("polyline_sample: need m >= 3");
    std::vector<Vec> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i)
        pts.push_back(curve.eval(i * curve.period / m));
    return pts;
}

} // namespace rkp
