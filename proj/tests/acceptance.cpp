// Acceptance suite: one numbered criterion per invocation (argv[1] = 1..13).
// Prints a single PASS/FAIL line with the measured values; exit 0 on pass.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rkp/bounds.hpp"
#include "rkp/curves.hpp"
#include "rkp/errors.hpp"
#include "rkp/invariants.hpp"
#include "rkp/kernels.hpp"
#include "rkp/linalg.hpp"
#include "rkp/mc.hpp"
#include "rkp/multidegree.hpp"
#include "rkp/rng.hpp"
#include "rkp/sampling.hpp"

using namespace rkp;

namespace {

Vec randn_vec(RandomStream& rs, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rs.normal();
    return v;
}

ConfigPair random_config(RandomStream& rs, double min_disc) {
    for (;;) {
        ConfigPair p;
        p.first = {randn_vec(rs, 4), randn_vec(rs, 4), randn_vec(rs, 4)};
        p.second = {randn_vec(rs, 4), randn_vec(rs, 4), randn_vec(rs, 4)};
        const double x = p.first.a3.squaredNorm();
        const double y = p.second.a3.squaredNorm();
        const double z = p.first.a3.dot(p.second.a3);
        if ((x * y - z * z) / (x * y) > min_disc) return p;
    }
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) ok = false;
        if (!detail.empty()) detail += "; ";
        detail += msg + (cond ? " [ok]" : " [FAIL]");
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- criteria

Check criterion_1() {
    Check c;
    QuadratureSpec q;
    q.points_per_axis = 1024;
    const double kappa = curvature_expectation(fourier_curve({0.0, 1.0}), q);
    c.require(std::abs(kappa - 2.0 * M_PI) < 1e-6,
              "circle curvature " + num(kappa) + " vs 2pi within 1e-6");
    return c;
}

Check criterion_2() {
    Check c;
    QuadratureSpec q;
    q.points_per_axis = 2048;
    const auto petal = petal_curve(3, 0.5);
    const double kappa = curvature_expectation(petal, q);
    c.require(std::abs(kappa - 9.72) <= 0.05,
              "petal(3, 0.5) curvature " + num(kappa) + " vs 9.72 +- 0.05");
    const double bound = unknot_fraction_bound(kappa);
    c.require(std::abs(bound - 0.547) <= 0.01,
              "unknot fraction bound " + num(bound) + " vs 0.547 +- 0.01");
    return c;
}

Check criterion_3() {
    Check c;
    QuadratureSpec q;
    q.points_per_axis = 2048;
    for (int k : {3, 5, 7}) {
        const double kappa = curvature_expectation(petal_curve(k, 1e-4), q);
        const double want = M_PI * (k + 1);
        c.require(std::abs(kappa - want) <= 0.02 * want,
                  "petal(" + std::to_string(k) + ", 1e-4) curvature " +
                      num(kappa) + " within 2% of " + num(want));
    }
    return c;
}

Check criterion_4() {
    Check c;
    RandomStream rs(4001, 0);
    int agree = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto p = random_config(rs, 0.1);
        const double kv = lk2_kernel(p);
        const auto ov = lk2_oracle(p, 1000000, 5000 + t);
        if (std::abs(kv - ov.mean) <= 4.0 * ov.stderr_) ++agree;
    }
    c.require(agree >= 95, "kernel-oracle 4-sigma agreement in " +
                               std::to_string(agree) + "/100 configs (need 95)");
    return c;
}

Check criterion_5() {
    Check c;
    // soft acceptance windows per k. The k=3 window is the given reference
    // window; the reference values for this construction are internally
    // inconsistent there by ~25%, so the other windows apply the same
    // relative margins (0.91x the lower reported value, 1.33x the upper)
    // to each k's reported pair. The hard criterion is the agreement of the
    // two independent estimators below.
    const double lo[4] = {0.55, 1.52, 2.86, 4.68};
    const double hi[4] = {0.80, 2.28, 4.25, 6.93};
    const int ks[4] = {3, 5, 7, 9};
    for (int idx = 0; idx < 4; ++idx) {
        const int k = ks[idx];
        const auto [c1, c2] = petal_link_pair(k, 1.0);
        const auto sampled =
            lk2_sampled(c1, c2, 10000, 64, FrameDist::gaussian, 500 + k);
        MCSpec spec;
        spec.n_samples = 500000;
        spec.seed = 600 + k;
        const auto mc = lk2_mc(c1, c2, spec);
        const double comb = std::sqrt(
            mc.stderr_ * mc.stderr_ +
            sampled.estimate.stderr_ * sampled.estimate.stderr_);
        const double gap = std::abs(mc.mean - sampled.estimate.mean);
        c.require(gap <= 3.0 * comb,
                  "k=" + std::to_string(k) + " sampled " +
                      num(sampled.estimate.mean) + " vs mc " + num(mc.mean) +
                      " gap " + num(gap) + " <= 3x" + num(comb));
        c.require(sampled.estimate.mean >= lo[idx] &&
                      sampled.estimate.mean <= hi[idx],
                  "k=" + std::to_string(k) + " sampled in [" + num(lo[idx]) +
                      ", " + num(hi[idx]) + "]");
        c.require(mc.mean >= lo[idx] && mc.mean <= hi[idx],
                  "k=" + std::to_string(k) + " mc in [" + num(lo[idx]) +
                      ", " + num(hi[idx]) + "]");
    }
    return c;
}

Check criterion_6() {
    Check c;
    auto row_stats = [](double eps, int k, std::uint64_t seed, long long& rej,
                        bool& diverged) {
        const auto [c1, c2] = petal_link_pair(k, eps);
        MCSpec spec;
        spec.n_samples = 200000;
        spec.seed = seed;
        try {
            const auto mc = lk2_mc(c1, c2, spec);
            rej = mc.n_rejected;
            diverged = mc.stderr_ > 0.25 * std::abs(mc.mean);
        } catch (const TooManyRejections&) {
            rej = spec.n_samples;
            diverged = true;
        }
    };
    long long rej_small = 0, rej_one = 0;
    int diverged_small = 0, diverged_one = 0;
    for (int k : {3, 5, 7, 9}) {
        long long r = 0;
        bool d = false;
        row_stats(0.1, k, 7000 + k, r, d);
        rej_small += r;
        diverged_small += d ? 1 : 0;
        row_stats(1.0, k, 7100 + k, r, d);
        rej_one += r;
        diverged_one += d ? 1 : 0;
    }
    c.require(rej_small >= rej_one,
              "guard rejections at eps=0.1 (" + std::to_string(rej_small) +
                  ") >= at eps=1 (" + std::to_string(rej_one) + ")");
    c.require(diverged_small >= 1,
              "diverged cells flagged at eps=0.1: " +
                  std::to_string(diverged_small));
    c.require(diverged_one == 0,
              "no diverged cells at eps=1: " + std::to_string(diverged_one));
    return c;
}

// shared run for criteria 7 and 8: projected petal links, k=5, eps=1
struct ProjectedRun {
    std::vector<double> links;
    double min_turning = 1e300;
};

ProjectedRun projected_run() {
    const auto [c1, c2] = petal_link_pair(5, 1.0);
    const auto p1 = polyline_sample(c1, 64);
    const auto p2 = polyline_sample(c2, 64);
    ProjectedRun run;
    for (int i = 0; i < 1000; ++i) {
        RandomStream rs(777, static_cast<std::uint64_t>(i));
        for (int attempt = 0; attempt < 16; ++attempt) {
            try {
                const Mat f = sample_frame(c1.dim, FrameDist::gaussian, rs);
                PolyLink link{project_polyline(p1, f),
                              project_polyline(p2, f)};
                run.links.push_back(linking_number(link));
                run.min_turning = std::min(
                    {run.min_turning,
                     total_curvature_poly(link.component1),
                     total_curvature_poly(link.component2)});
                break;
            } catch (const DegenerateInput&) {
            }
        }
    }
    return run;
}

Check criterion_7() {
    Check c;
    const auto run = projected_run();
    int integral = 0;
    for (double lk : run.links)
        if (std::abs(lk - std::round(lk)) < 1e-6) ++integral;
    c.require(run.links.size() == 1000, "1000 links sampled");
    c.require(integral * 100 >= 99 * static_cast<int>(run.links.size()),
              std::to_string(integral) + "/1000 linking numbers integral");

    auto circle3 = [](int m, double radius, double cx, int ax1, int ax2) {
        std::vector<Vec> pts;
        for (int i = 0; i < m; ++i) {
            const double t = 2.0 * M_PI * i / m;
            Vec p = Vec::Zero(3);
            p(0) = cx;
            p(ax1) += radius * std::cos(t);
            p(ax2) += radius * std::sin(t);
            pts.push_back(p);
        }
        return pts;
    };
    const PolyLink hopf{circle3(48, 1.0, 0.0, 0, 1), circle3(48, 1.0, 1.0, 0, 2)};
    const double lk_hopf = linking_number(hopf);
    c.require(std::abs(std::abs(lk_hopf) - 1.0) < 1e-9,
              "Hopf link gives " + num(lk_hopf));
    const PolyLink split{circle3(48, 1.0, 0.0, 0, 1),
                         circle3(48, 1.0, 10.0, 0, 2)};
    const double lk_split = linking_number(split);
    c.require(std::abs(lk_split) < 1e-9, "split link gives " + num(lk_split));
    return c;
}

Check criterion_8() {
    Check c;
    const auto run = projected_run();
    c.require(run.min_turning >= 2.0 * M_PI - 1e-9,
              "minimum projected turning-angle sum " + num(run.min_turning) +
                  " >= 2pi - 1e-9");
    return c;
}

Check criterion_9() {
    Check c;
    const auto all = enumerate_multigraphs({1, 1, 3, 1, 1, 3});
    c.require(all.size() == 56,
              "enumeration count " + std::to_string(all.size()) + " == 56");
    c.require(antisymmetry_filter(all).size() == 42,
              "filtered count == 42");
    const auto cfgs = sample_configs(500, 9001);
    const auto d = denominator_d_coeffs();
    ConfigOracle oracle = [](const std::vector<Vec>& v) {
        ConfigPair p;
        p.first = {v[0], v[1], v[2]};
        p.second = {v[3], v[4], v[5]};
        return lk2_kernel(p);
    };
    try {
        const auto fit = fit_numerator(cfgs, d, oracle);
        const double rel = fit.residual_rms / fit.target_rms;
        c.require(rel < 1e-6,
                  "held-out relative residual " + num(rel) + " < 1e-6");
    } catch (const IllConditioned& e) {
        c.require(false, std::string("fit failed: ") + e.what());
    }
    return c;
}

Check criterion_10() {
    Check c;
    bool exact = true;
    for (double th : {0.3, 0.7, 1.1}) {
        const double a = std::cos(th), b = std::sin(th);
        if (i33_coeff(2, a, b) != 1.0 / (M_PI * a * b)) exact = false;
    }
    c.require(exact, "i33_coeff(2, a, b) == 1/(pi a b) exactly");

    RandomStream rs(10001, 0);
    int matched = 0;
    for (int t = 0; t < 100; ++t) {
        const auto p = random_config(rs, 0.05);
        const std::vector<Vec> a = {p.first.a1, p.first.a2, p.first.a3};
        const std::vector<Vec> ap = {p.second.a1, p.second.a2, p.second.a3};
        const auto h = higher_kernel(a, ap, 2, 0, 0);
        const double kv = lk2_kernel(p);
        if (std::abs(h.value - kv) <=
            1e-9 * std::max(1.0, std::abs(kv)))
            ++matched;
    }
    c.require(matched == 100,
              "higher_kernel(m+n=2) matches lk2_kernel on " +
                  std::to_string(matched) + "/100 configs");

    int within = 0;
    for (int t = 0; t < 10; ++t) {
        const double th = 0.2 + 1.15 * t / 9.0; // spread over (0, pi/2)
        const double a = std::cos(th), b = std::sin(th);
        const auto mc = iij_oracle(3, 3, 4, a, b, 400000, 10100 + t);
        const double closed = i33_coeff(4, a, b);
        if (std::abs(mc.mean - closed) <= 4.0 * mc.stderr_) ++within;
    }
    c.require(within >= 9, "i33_coeff(4) vs direct Gaussian MC within 4 "
                           "sigma at " +
                               std::to_string(within) + "/10 points");
    return c;
}

Check criterion_11() {
    Check c;
    RandomStream rs(11001, 0);
    QuadratureSpec q;
    q.points_per_axis = 96;

    int icn_ok = 0, curv_ok = 0, lk2_ok = 0, refined_ok = 0;
    for (int t = 0; t < 10; ++t) {
        // nonzero constant terms keep eta2 positive for the refined bound
        const std::vector<double> cc = {0.4 + 0.4 * rs.uniform(),
                                        0.4 + 0.8 * rs.uniform(),
                                        0.6 * rs.uniform()};
        const std::vector<double> dd = {0.4 + 0.4 * rs.uniform(),
                                        0.4 + 0.8 * rs.uniform()};
        const auto [r1, r2] = orthogonal_fourier_pair(cc, dd);
        // on orthogonal pairs the kernel degenerates to |a1||a2|/|a3|^2 and
        // the bound is exactly tight, so allow roundoff
        const double est = icn_expectation(r1, r2, q);
        if (icn_bound(cc, dd, min_distance(r1, r2)).value >= est - 1e-9)
            ++icn_ok;

        const std::vector<double> fc = {0.0, 0.5 + rs.uniform(),
                                        0.6 * rs.uniform(),
                                        0.3 * rs.uniform()};
        QuadratureSpec qc;
        qc.points_per_axis = 512;
        // tight (equality) on this family; allow roundoff
        if (curvature_bound(fc) >=
            curvature_expectation(fourier_curve(fc), qc) - 1e-9)
            ++curv_ok;

        MCSpec spec;
        spec.n_samples = 100000;
        spec.seed = 11100 + t;
        const auto mc = lk2_mc(r1, r2, spec);
        const auto C = compute_C(r1, r2, spec);
        const double bound = lk2_bound(max_speed(r1), max_speed(r2),
                                       min_distance(r1, r2), C.mean);
        if (bound >= mc.mean - 3.0 * mc.stderr_) ++lk2_ok;

        const auto refined = diagonal_split(r1, r2, 0.5, 12);
        if (refined.value >= mc.mean - 3.0 * mc.stderr_) ++refined_ok;
    }
    c.require(icn_ok == 10, "icn bound dominates in " +
                                std::to_string(icn_ok) + "/10");
    c.require(curv_ok == 10, "curvature bound dominates in " +
                                 std::to_string(curv_ok) + "/10");
    c.require(lk2_ok == 10,
              "lk2 bound dominates in " + std::to_string(lk2_ok) + "/10");
    c.require(refined_ok == 10, "refined bound dominates in " +
                                    std::to_string(refined_ok) + "/10");
    return c;
}

Check criterion_12() {
    Check c;
    RandomStream rs(12001, 0);
    int fails = 0;
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        const auto p = random_config(rs, 0.01);
        const double base = lk2_kernel(p);
        const double scale = std::max(1.0, std::abs(base));

        ConfigPair q = p;
        std::swap(q.first.a1, q.first.a2);
        if (std::abs(lk2_kernel(q) + base) > 1e-9 * scale) ++fails;

        q = p;
        q.second.a1 *= 3.0;
        if (std::abs(lk2_kernel(q) - 3.0 * base) > 1e-9 * scale) ++fails;

        q = p;
        q.first.a2 += 1.3 * p.first.a3;
        if (std::abs(lk2_kernel(q) - base) > 1e-8 * scale) ++fails;

        Mat g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = rs.normal();
        const Mat rot = orthonormalize(g);
        q.first = {rot * p.first.a1, rot * p.first.a2, rot * p.first.a3};
        q.second = {rot * p.second.a1, rot * p.second.a2, rot * p.second.a3};
        if (std::abs(lk2_kernel(q) - base) > 1e-8 * scale) ++fails;

        // icn kernel: degree 1 in tangents, degree -2 in the chord,
        // orthogonal invariance
        const ConfigTriple tr = p.first;
        const double icn = icn_kernel(tr);
        if (std::abs(icn_kernel({2.0 * tr.a1, tr.a2, tr.a3}) - 2.0 * icn) >
            1e-9 * std::max(1.0, icn))
            ++fails;
        if (std::abs(icn_kernel({tr.a1, tr.a2, 2.0 * tr.a3}) - icn / 4.0) >
            1e-9 * std::max(1.0, icn))
            ++fails;
        if (std::abs(icn_kernel({rot * tr.a1, rot * tr.a2, rot * tr.a3}) -
                     icn) > 1e-8 * std::max(1.0, icn))
            ++fails;
    }
    c.require(fails == 0, "invariance failures: " + std::to_string(fails) +
                              "/" + std::to_string(7 * draws) + " checks");
    return c;
}

int run_cli(const std::string& args, std::string& output) {
    output.clear();
    FILE* pipe = popen(("./rkp " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        output.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Check criterion_13() {
    Check c;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"sample-links",
         "sample-links --curve petal-pair:3,1 --n 50 --segments 16 --seed 5"},
        {"mc-lk2",
         "mc-lk2 --curve petal-pair:3,1 --n 20000 --chunks 4 --seed 5"},
        {"curvature", "curvature --curve petal:3,0.5 --quad 256"},
        {"icn", "icn --curve 'orthogonal-pair:0,1;0,1' --quad 48"},
        {"bounds",
         "bounds --which lk2 --curve 'orthogonal-pair:0,1;0,1' --n 20000 "
         "--seed 5"},
        {"table5",
         "table5 --epsilon 1 --links 50 --segments 16 --mc-points 20000 "
         "--seed 5 --chunks 2"},
        {"fit-multidegree", "fit-multidegree --samples 250 --seed 5"},
        {"validate-kernel",
         "validate-kernel --trials 10 --mc-points 20000 --seed 5"},
    };
    for (const auto& [name, args] : commands) {
        std::string out1, out2;
        const int rc1 = run_cli(args, out1);
        const int rc2 = run_cli(args, out2);
        c.require(rc1 == 0 && rc2 == 0 && !out1.empty() && out1 == out2,
                  name + " byte-identical across runs (rc " +
                      std::to_string(rc1) + "/" + std::to_string(rc2) + ")");
    }
    // thread count is scheduling only: same bytes with --threads 2
    std::string a, b;
    run_cli("mc-lk2 --curve petal-pair:3,1 --n 20000 --chunks 4 --seed 5", a);
    run_cli("mc-lk2 --curve petal-pair:3,1 --n 20000 --chunks 4 --seed 5 "
            "--threads 2",
            b);
    c.require(!a.empty() && a == b, "mc-lk2 invariant under --threads");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..13>\n";
        return 2;
    }
    const int n = std::atoi(argv[1]);
    Check c;
    switch (n) {
        case 1: c = criterion_1(); break;
        case 2: c = criterion_2(); break;
        case 3: c = criterion_3(); break;
        case 4: c = criterion_4(); break;
        case 5: c = criterion_5(); break;
        case 6: c = criterion_6(); break;
        case 7: c = criterion_7(); break;
        case 8: c = criterion_8(); break;
        case 9: c = criterion_9(); break;
        case 10: c = criterion_10(); break;
        case 11: c = criterion_11(); break;
        case 12: c = criterion_12(); break;
        case 13: c = criterion_13(); break;
        default:
            std::cerr << "unknown criterion " << n << "\n";
            return 2;
    }
    std::cout << "criterion " << n << ": " << (c.ok ? "PASS" : "FAIL")
              << " — " << c.detail << "\n";
    return c.ok ? 0 : 1;
}
