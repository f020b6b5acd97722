#pragma once
#include <vector>

#include "rkp/curves.hpp"
#include "rkp/types.hpp"

namespace rkp {

// two closed polygonal components in R^3 (vertex lists, implicitly closed)
struct PolyLink {
    std::vector<Vec> component1;
    std::vector<Vec> component2;
};

enum class QuadRule { midpoint, trapezoid };

struct QuadratureSpec {
    int points_per_axis = 256;
    QuadRule rule = QuadRule::midpoint;
};

// Solid-angle linking number: (1/4pi) sum over segment pairs of
// solid_angle(a,b,c) + solid_angle(c,d,a). Near-integer for links in
// general position. Throws DegenerateInput if components touch.
double linking_number(const PolyLink& link);

// Sum of exterior turning angles of a closed polygon; >= 2 pi (Fenchel).
double total_curvature_poly(const std::vector<Vec>& points);

// Quadrature of the curvature kernel over the parameter domain, with
// panels split at curve breakpoints. Second derivatives fall back to
// central differences on deriv (h = 1e-5) when no analytic form exists.
double curvature_expectation(const SpaceCurve& curve,
                             const QuadratureSpec& quad = {});

// (C_icn / 4 pi) times the tensor-product quadrature of the ICN kernel
// over the two parameter domains.
double icn_expectation(const SpaceCurve& c1, const SpaceCurve& c2,
                       const QuadratureSpec& quad = {}, double C_icn = 1.0);

// quadrature nodes/weights for one curve domain, panels split at breakpoints
std::vector<std::pair<double, double>> quadrature_nodes(
    const SpaceCurve& curve, const QuadratureSpec& quad);

} // namespace rkp
