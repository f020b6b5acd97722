#include "rkp/multidegree.hpp"

#include <cmath>

#include "rkp/errors.hpp"
#include "rkp/rng.hpp"

namespace rkp {

namespace {

void enumerate_rec(const std::vector<std::pair<int, int>>& pairs, size_t idx,
                   std::vector<int>& rem,
                   std::vector<std::pair<int, int>>& edges,
                   std::vector<MultiGraph>& out) {
    if (idx == pairs.size()) {
        for (int r : rem)
            if (r != 0) return;
        out.push_back({edges});
        return;
    }
    const auto [i, j] = pairs[idx];
    const int max_mult =
        i == j ? rem[i] / 2 : std::min(rem[i], rem[j]);
    for (int m = 0; m <= max_mult; ++m) {
        if (m > 0) {
            if (i == j) {
                rem[i] -= 2;
            } else {
                --rem[i];
                --rem[j];
            }
            edges.emplace_back(i, j);
        }
        enumerate_rec(pairs, idx + 1, rem, edges, out);
    }
    // undo
    for (int m = 0; m < max_mult; ++m) {
        if (edges.empty() || edges.back() != std::make_pair(i, j)) break;
        edges.pop_back();
        if (i == j) {
            rem[i] += 2;
        } else {
            ++rem[i];
            ++rem[j];
        }
    }
}

} // namespace

std::vector<MultiGraph> enumerate_multigraphs(
    const std::vector<int>& degrees) {
    int total = 0;
    for (int d : degrees) total += d;
    if (total % 2 != 0)
        throw InvalidSpec("enumerate_multigraphs: degree sum must be even");
    const int n = static_cast<int>(degrees.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<int> rem = degrees;
    std::vector<std::pair<int, int>> edges;
    std::vector<MultiGraph> out;
    enumerate_rec(pairs, 0, rem, edges, out);
    return out;
}

std::vector<MultiGraph> antisymmetry_filter(
    const std::vector<MultiGraph>& gs) {
    std::vector<MultiGraph> out;
    for (const auto& g : gs) {
        bool drop = false;
        for (const auto& e : g.edges)
            if (e == std::make_pair(0, 1) || e == std::make_pair(3, 4))
                drop = true;
        if (!drop) out.push_back(g);
    }
    return out;
}

double monomial_eval(const MultiGraph& g, const std::vector<Vec>& vectors) {
    double v = 1.0;
    for (const auto& [i, j] : g.edges) {
        if (i >= static_cast<int>(vectors.size()) ||
            j >= static_cast<int>(vectors.size()))
            throw ShapeError("monomial_eval: vertex out of range");
        v *= vectors[i].dot(vectors[j]);
    }
    return v;
}

std::vector<double> denominator_d_coeffs() {
    // expand x^2 y^2 (x y - z^2)^3 as a polynomial in z^2 with matched
    // x, y powers; coefficient of z^{2p} lands on P_{p+1}
    std::vector<double> poly = {1.0};             // (xy - z^2)^0
    const std::vector<double> factor = {1.0, -1.0}; // xy - z^2
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < factor.size(); ++j)
                next[i + j] += poly[i] * factor[j];
        poly = next;
    }
    std::vector<double> d(6, 0.0);
    for (size_t p = 0; p < poly.size(); ++p) d[p] = poly[p];
    return d;
}

double denominator_eval(const std::vector<double>& d,
                        const std::vector<Vec>& vectors) {
    const Vec& a3 = vectors[2];
    const Vec& a3p = vectors[5];
    const double x = a3.squaredNorm(), y = a3p.squaredNorm();
    const double z = a3.dot(a3p);
    double total = 0.0;
    for (int p = 0; p < 6; ++p)
        total += d[p] * std::pow(x * y, 5 - p) * std::pow(z * z, p);
    return total;
}

std::vector<std::vector<Vec>> sample_configs(int n, std::uint64_t seed,
                                             double disc_guard) {
    RandomStream rs(seed, 0);
    std::vector<std::vector<Vec>> out;
    out.reserve(n);
    while (static_cast<int>(out.size()) < n) {
        std::vector<Vec> cfg(6);
        for (auto& v : cfg) {
            v = Vec(4);
            for (int i = 0; i < 4; ++i) v(i) = rs.normal();
        }
        const double x = cfg[2].squaredNorm(), y = cfg[5].squaredNorm();
        const double z = cfg[2].dot(cfg[5]);
        if ((x * y - z * z) / (x * y) < disc_guard) continue;
        out.push_back(std::move(cfg));
    }
    return out;
}

FitResult fit_numerator(const std::vector<std::vector<Vec>>& samples,
                        const std::vector<double>& d_coeffs,
                        const ConfigOracle& oracle) {
    if (samples.size() < 200)
        throw InvalidSpec("fit_numerator: need >= 200 samples");
    const auto all = enumerate_multigraphs({1, 1, 3, 1, 1, 3});
    FitResult res;
    res.basis = antisymmetry_filter(all);
    const int nb = static_cast<int>(res.basis.size());
    const int n_total = static_cast<int>(samples.size());
    const int n_fit = n_total - n_total / 5; // hold out the last 20%

    Mat design(n_fit, nb);
    Vec target(n_fit);
    for (int r = 0; r < n_fit; ++r) {
        const auto& cfg = samples[r];
        const double g2 = denominator_eval(d_coeffs, cfg);
        if (!(g2 > 0.0))
            throw IllConditioned("fit_numerator: d-polynomial not positive");
        target(r) = oracle(cfg) * std::sqrt(g2);
        for (int c = 0; c < nb; ++c)
            design(r, c) = monomial_eval(res.basis[c], cfg);
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(design);
    const Vec coef = cod.solve(target);
    res.rank = static_cast<int>(cod.rank());
    res.coefficients.assign(coef.data(), coef.data() + nb);

    double ss = 0.0, st = 0.0;
    int held = 0;
    for (int r = n_fit; r < n_total; ++r) {
        const auto& cfg = samples[r];
        const double g2 = denominator_eval(d_coeffs, cfg);
        const double y = oracle(cfg) * std::sqrt(g2);
        double pred = 0.0;
        for (int c = 0; c < nb; ++c)
            pred += coef(c) * monomial_eval(res.basis[c], cfg);
        ss += (pred - y) * (pred - y);
        st += y * y;
        ++held;
    }
    res.residual_rms = held > 0 ? std::sqrt(ss / held) : 0.0;
    res.target_rms = held > 0 ? std::sqrt(st / held) : 0.0;
    if (res.target_rms > 0.0 &&
        res.residual_rms > 1e-3 * res.target_rms)
        throw IllConditioned("fit_numerator: held-out residual too large");
    return res;
}

} // namespace rkp
