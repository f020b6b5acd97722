#include "rkp/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "rkp/errors.hpp"
#include "rkp/kernels.hpp"
#include "rkp/linalg.hpp"

namespace rkp {

double linking_number(const PolyLink& link) {
    const auto& v1 = link.component1;
    const auto& v2 = link.component2;
    if (v1.size() < 3 || v2.size() < 3)
        throw InvalidSpec("linking_number: need >= 3 vertices per component");
    const size_t aa = v1.size(), bb = v2.size();
    double total = 0.0;
    for (size_t i = 0; i < aa; ++i) {
        const Vec& p0 = v1[i];
        const Vec& p1 = v1[(i + 1) % aa];
        for (size_t j = 0; j < bb; ++j) {
            const Vec& q0 = v2[j];
            const Vec& q1 = v2[(j + 1) % bb];
            const Vec a = q0 - p0;
            const Vec b = q0 - p1;
            const Vec c = q1 - p1;
            const Vec d = q1 - p0;
            if (a.norm() < 1e-12 || b.norm() < 1e-12 || c.norm() < 1e-12 ||
                d.norm() < 1e-12)
                throw DegenerateInput("linking_number: components touch");
            total += solid_angle(a, b, c) + solid_angle(c, d, a);
        }
    }
    return total / (4.0 * M_PI);
}

double total_curvature_poly(const std::vector<Vec>& points) {
    const size_t n = points.size();
    if (n < 3)
        throw InvalidSpec("total_curvature_poly: need >= 3 vertices");
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec e0 = points[(i + 1) % n] - points[i];
        const Vec e1 = points[(i + 2) % n] - points[(i + 1) % n];
        const double n0 = e0.norm(), n1 = e1.norm();
        if (n0 < 1e-300 || n1 < 1e-300)
            throw DegenerateInput("total_curvature_poly: zero-length edge");
        const double c = std::clamp(e0.dot(e1) / (n0 * n1), -1.0, 1.0);
        total += std::acos(c);
    }
    return total;
}

std::vector<std::pair<double, double>> quadrature_nodes(
    const SpaceCurve& curve, const QuadratureSpec& quad) {
    // panel edges: breakpoints plus the domain endpoints
    std::vector<double> edges = curve.breakpoints;
    edges.push_back(0.0);
    edges.push_back(curve.period);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) {
                                return std::abs(a - b) < 1e-12;
                            }),
                edges.end());
    std::vector<std::pair<double, double>> nodes;
    const int total = std::max(quad.points_per_axis, 16);
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const double len = hi - lo;
        if (len <= 0.0) continue;
        const int m =
            std::max(4, static_cast<int>(std::lround(total * len / curve.period)));
        if (quad.rule == QuadRule::midpoint) {
            const double h = len / m;
            for (int i = 0; i < m; ++i)
                nodes.emplace_back(lo + (i + 0.5) * h, h);
        } else {
            // trapezoid, endpoints nudged inside so deriv stays two-sided
            const double h = len / m;
            const double nudge = 1e-9 * len;
            for (int i = 0; i <= m; ++i) {
                double t = lo + i * h;
                if (i == 0) t += nudge;
                if (i == m) t -= nudge;
                nodes.emplace_back(t, (i == 0 || i == m) ? 0.5 * h : h);
            }
        }
    }
    return nodes;
}

double curvature_expectation(const SpaceCurve& curve,
                             const QuadratureSpec& quad) {
    const auto nodes = quadrature_nodes(curve, quad);
    double total = 0.0;
    const double h = 1e-5;
    for (const auto& [t, w] : nodes) {
        const Vec d1 = curve.deriv(t);
        Vec d2;
        if (curve.deriv2)
            d2 = curve.deriv2(t);
        else
            d2 = (curve.deriv(t + h) - curve.deriv(t - h)) / (2.0 * h);
        total += w * curvature_kernel(d1, d2);
    }
    return total;
}

double icn_expectation(const SpaceCurve& c1, const SpaceCurve& c2,
                       const QuadratureSpec& quad, double C_icn) {
    const auto n1 = quadrature_nodes(c1, quad);
    const auto n2 = quadrature_nodes(c2, quad);
    // cache curve evaluations along each axis
    std::vector<Vec> p1, d1, p2, d2;
    for (const auto& [t, w] : n1) {
        p1.push_back(c1.eval(t));
        d1.push_back(c1.deriv(t));
    }
    for (const auto& [s, w] : n2) {
        p2.push_back(c2.eval(s));
        d2.push_back(c2.deriv(s));
    }
    double total = 0.0;
    for (size_t i = 0; i < n1.size(); ++i) {
        double row = 0.0;
        for (size_t j = 0; j < n2.size(); ++j) {
            const Vec a3 = p2[j] - p1[i];
            if (a3.norm() < 1e-9)
                throw DegenerateInput("icn_expectation: curves touch");
            row += n2[j].second * icn_kernel({d1[i], d2[j], a3});
        }
        total += n1[i].second * row;
    }
    return C_icn / (4.0 * M_PI) * total;
}

} // namespace rkp
