#pragma once
#include <map>
#include <string>
#include <vector>

#include "rkp/curves.hpp"
#include "rkp/types.hpp"

namespace rkp {

struct BoundReport {
    double value = 0.0;
    std::map<std::string, double> ingredients;
};

// min over (t,s) of |r2(s) - r1(t)|: grid scan plus golden-section
// refinement. Throws TouchingCurves when the result is below 1e-9.
double min_distance(const SpaceCurve& c1, const SpaceCurve& c2,
                    int grid = 256, int refine_iters = 48);

// max over the grid of |deriv|
double max_speed(const SpaceCurve& c, int grid = 4096);

// <ICN> <= C_icn * pi * sqrt((sum j^2 c_j^2)(sum j^2 d_j^2)) / minDist^2
BoundReport icn_bound(const std::vector<double>& c,
                      const std::vector<double>& d, double min_dist,
                      double C_icn = 1.0);

// orthogonal-data variant: denominator sum c^2 + sum d^2
BoundReport icn_bound_orthogonal(const std::vector<double>& c,
                                 const std::vector<double>& d,
                                 double C_icn = 1.0);

// total-curvature bound 2 pi sqrt(sum c_k^2 k^4 / sum c_k^2 k^2)
double curvature_bound(const std::vector<double>& c);

// configuration constant C: guarded MC of 1/sqrt(D) over the T^4 box
MCEstimate compute_C(const SpaceCurve& c1, const SpaceCurve& c2,
                     const MCSpec& spec);

// <Lk^2> <= (1/(4 pi)^2) * 4 C v1^2 v2^2 / (pi minDist^2)
double lk2_bound(double v1, double v2, double min_dist, double C);

// Diagonal-split refinement: mu1(eps) = {|s-s'| < eps, |t-t'| < eps}
// (periodic distances); eta1/eta2 grid minima; C1 via the comparison
// integral; refined bound over the complement. Throws NonpositiveEta when
// the grid minimum of eta1 is <= 0.
BoundReport diagonal_split(const SpaceCurve& c1, const SpaceCurve& c2,
                           double eps, int grid = 24);

// x < kappa/(2 pi) - 1, clamped to [0,1]. Throws InvalidInput below 2 pi.
double unknot_fraction_bound(double kappa_mean);

} // namespace rkp
