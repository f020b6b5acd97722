#include "rkp/bounds.hpp"

#include <cmath>

#include "rkp/errors.hpp"
#include "rkp/mc.hpp"

namespace rkp {

namespace {

double dist_at(const SpaceCurve& c1, const SpaceCurve& c2, double t,
               double s) {
    return (c2.eval(s) - c1.eval(t)).norm();
}

// one golden-section pass in a single coordinate
double golden_1d(const std::function<double(double)>& f, double lo, double hi,
                 int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

double torus_dist(double u, double v, double period) {
    double d = std::abs(u - v);
    return std::min(d, period - d);
}

} // namespace

double min_distance(const SpaceCurve& c1, const SpaceCurve& c2, int grid,
                    int refine_iters) {
    double best = std::numeric_limits<double>::infinity();
    double bt = 0.0, bs = 0.0;
    std::vector<Vec> p1(grid), p2(grid);
    for (int i = 0; i < grid; ++i) {
        p1[i] = c1.eval(i * c1.period / grid);
        p2[i] = c2.eval(i * c2.period / grid);
    }
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double d = (p2[j] - p1[i]).norm();
            if (d < best) {
                best = d;
                bt = i * c1.period / grid;
                bs = j * c2.period / grid;
            }
        }
    // alternating golden-section refinement within one grid cell
    const double ht = c1.period / grid, hs = c2.period / grid;
    double t = bt, s = bs;
    for (int round = 0; round < 3; ++round) {
        t = golden_1d([&](double u) { return dist_at(c1, c2, u, s); },
                      t - ht, t + ht, refine_iters);
        s = golden_1d([&](double u) { return dist_at(c1, c2, t, u); },
                      s - hs, s + hs, refine_iters);
    }
    best = std::min(best, dist_at(c1, c2, t, s));
    if (best < 1e-9)
        throw TouchingCurves("min_distance: curves touch");
    return best;
}

double max_speed(const SpaceCurve& c, int grid) {
    double best = 0.0;
    for (int i = 0; i < grid; ++i) {
        // offset avoids landing exactly on breakpoints
        const double t = (i + 0.5) * c.period / grid;
        best = std::max(best, c.deriv(t).norm());
    }
    return best;
}

namespace {

double weighted_sum(const std::vector<double>& c, int power) {
    double s = 0.0;
    for (size_t k = 1; k < c.size(); ++k)
        s += c[k] * c[k] * std::pow(static_cast<double>(k), power);
    return s;
}

double coeff_norm2(const std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    return s;
}

} // namespace

BoundReport icn_bound(const std::vector<double>& c,
                      const std::vector<double>& d, double min_dist,
                      double C_icn) {
    if (min_dist <= 0.0)
        throw InvalidInput("icn_bound: min distance must be positive");
    BoundReport rep;
    const double sc = weighted_sum(c, 2), sd = weighted_sum(d, 2);
    rep.value = C_icn * M_PI * std::sqrt(sc * sd) / (min_dist * min_dist);
    rep.ingredients = {{"sum_j2c2", sc},
                       {"sum_j2d2", sd},
                       {"minDist", min_dist},
                       {"C_icn", C_icn}};
    return rep;
}

BoundReport icn_bound_orthogonal(const std::vector<double>& c,
                                 const std::vector<double>& d, double C_icn) {
    BoundReport rep;
    const double sc = weighted_sum(c, 2), sd = weighted_sum(d, 2);
    const double sep2 = coeff_norm2(c) + coeff_norm2(d);
    if (sep2 <= 0.0)
        throw InvalidInput("icn_bound_orthogonal: zero separation");
    rep.value = C_icn * M_PI * std::sqrt(sc * sd) / sep2;
    rep.ingredients = {{"sum_j2c2", sc},
                       {"sum_j2d2", sd},
                       {"separation2", sep2},
                       {"C_icn", C_icn}};
    return rep;
}

double curvature_bound(const std::vector<double>& c) {
    const double s2 = weighted_sum(c, 2), s4 = weighted_sum(c, 4);
    if (s2 <= 0.0)
        throw InvalidSpec("curvature_bound: no oscillatory coefficients");
    return 2.0 * M_PI * std::sqrt(s4 / s2);
}

MCEstimate compute_C(const SpaceCurve& c1, const SpaceCurve& c2,
                     const MCSpec& spec) {
    std::vector<std::pair<double, double>> box = {{0.0, c1.period},
                                                  {0.0, c2.period},
                                                  {0.0, c1.period},
                                                  {0.0, c2.period}};
    auto f = [&](const std::vector<double>& x, double& out) {
        const Vec a3 = c2.eval(x[1]) - c1.eval(x[0]);
        const Vec a3p = c2.eval(x[3]) - c1.eval(x[2]);
        const double xx = a3.squaredNorm(), yy = a3p.squaredNorm();
        const double zz = a3.dot(a3p);
        const double dsc = xx * yy - zz * zz;
        if (!(dsc / (xx * yy) > spec.guard)) return false;
        out = 1.0 / std::sqrt(dsc);
        return true;
    };
    return mc_integrate(f, box, spec);
}

double lk2_bound(double v1, double v2, double min_dist, double C) {
    if (v1 <= 0.0 || v2 <= 0.0 || min_dist <= 0.0 || C <= 0.0)
        throw InvalidInput("lk2_bound: all inputs must be positive");
    return (1.0 / (16.0 * M_PI * M_PI)) * 4.0 * C * v1 * v1 * v2 * v2 /
           (M_PI * min_dist * min_dist);
}

BoundReport diagonal_split(const SpaceCurve& c1, const SpaceCurve& c2,
                           double eps, int grid) {
    if (!(eps > 0.0) || eps > M_PI / 4.0)
        throw InvalidInput("diagonal_split: eps must be in (0, pi/4]");
    const double T1 = c1.period, T2 = c2.period;
    // a3(t, s) on the grid
    std::vector<Vec> a3(grid * grid);
    std::vector<double> ts(grid), ss(grid);
    for (int i = 0; i < grid; ++i) {
        ts[i] = (i + 0.5) * T1 / grid;
        ss[i] = (i + 0.5) * T2 / grid;
    }
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            a3[i * grid + j] = c2.eval(ss[j]) - c1.eval(ts[i]);

    double eta1 = std::numeric_limits<double>::infinity();
    double eta2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            for (int ip = 0; ip < grid; ++ip)
                for (int jp = 0; jp < grid; ++jp) {
                    const double dt = torus_dist(ts[i], ts[ip], T1);
                    const double ds = torus_dist(ss[j], ss[jp], T2);
                    const Vec& u = a3[i * grid + j];
                    const Vec& v = a3[ip * grid + jp];
                    const double d = u.squaredNorm() * v.squaredNorm() -
                                     std::pow(u.dot(v), 2);
                    if (dt < eps && ds < eps) {
                        const double r2 = dt * dt + ds * ds;
                        if (r2 < 1e-20) continue; // exact diagonal, 0/0
                        eta1 = std::min(eta1,
                                        std::sqrt(std::max(d, 0.0) / r2));
                    } else {
                        eta2 =
                            std::min(eta2, std::sqrt(std::max(d, 0.0)));
                    }
                }
    if (!(eta1 > 0.0))
        throw NonpositiveEta("diagonal_split: eta1 <= 0 on the grid");
    if (!(eta2 > 0.0))
        throw NonpositiveEta("diagonal_split: eta2 <= 0 on the grid");
    // int over |u|<eps, |v|<eps of 1/sqrt(u^2+v^2) = 8 eps asinh(1)
    const double inner = 8.0 * eps * std::asinh(1.0);
    const double c1v = T1 * T2 * inner / eta1;
    const double vol_mu1c =
        T1 * T2 * (T1 * T2 - (2.0 * eps) * (2.0 * eps));
    const double v1 = max_speed(c1), v2 = max_speed(c2);
    const double k = min_distance(c1, c2);
    BoundReport rep;
    rep.value = (1.0 / (16.0 * M_PI * M_PI)) *
                (4.0 * v1 * v1 * v2 * v2 / (M_PI * k * k)) *
                (c1v + vol_mu1c / eta2);
    rep.ingredients = {{"eta1", eta1},         {"eta2", eta2},
                       {"C1", c1v},            {"vol_mu1c", vol_mu1c},
                       {"epsilon_split", eps}, {"v1", v1},
                       {"v2", v2},             {"minDist", k},
                       {"grid", static_cast<double>(grid)}};
    return rep;
}

double unknot_fraction_bound(double kappa_mean) {
    if (kappa_mean < 2.0 * M_PI - 1e-9)
        throw InvalidInput("unknot_fraction_bound: kappa below 2 pi");
    return std::clamp(kappa_mean / (2.0 * M_PI) - 1.0, 0.0, 1.0);
}

} // namespace rkp
