#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "rkp/types.hpp"

namespace rkp {

// Parametrized closed curve r(t) in R^n on the half-open domain [0, period).
// deriv2 is analytic where available; callers fall back to finite
// differences on deriv when it is empty. breakpoints lists the parameters
// where deriv is only one-sided.
struct SpaceCurve {
    int dim = 0;
    double period = 0.0;
    std::function<Vec(double)> eval;
    std::function<Vec(double)> deriv;
    std::function<Vec(double)> deriv2;
    std::vector<double> breakpoints;
};

// r(t) = c0 e1 + sum_k c[k] (cos(kt) e_{2k} + sin(kt) e_{2k+1}) in R^{2N+1}
// (0-based coordinates: c0 at 0, cos at 2k-1, sin at 2k). Period 2 pi.
// |r'(t)|^2 = sum k^2 c_k^2 for all t.
SpaceCurve fourier_curve(const std::vector<double>& c);

// Two Fourier curves on disjoint coordinate supports: r1(t).r2(s) = 0 and
// |r2(s) - r1(t)|^2 = sum c^2 + sum d^2 for all s, t.
std::pair<SpaceCurve, SpaceCurve> orthogonal_fourier_pair(
    const std::vector<double>& c, const std::vector<double>& d);

// Rose with k petals in the first two coordinates plus a per-strand linear
// taper of slope 2 k eps / pi in coordinate 2+i; strand i rises 0 -> eps on
// [2i h, (2i+1) h) and falls back on [(2i+1) h, (2i+2) h), h = pi/(2k).
// Curve lives in R^{2+k} with domain [0, pi). k must be odd.
SpaceCurve petal_curve(int k, double eps);

// Two tapered roses in R^{2+2k}: the second is the first rotated by
// (k-2) pi / k in the rose plane, with the tapers on disjoint coordinates.
std::pair<SpaceCurve, SpaceCurve> petal_link_pair(int k, double eps);

// m >= 3 equally spaced samples r(i T / m), treated as a closed polygon.
std::vector<Vec> polyline_sample(const SpaceCurve& curve, int m);

} // namespace rkp
