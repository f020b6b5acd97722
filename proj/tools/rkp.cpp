// rkp: batch front end for the random-projection link statistics library.
// Subcommands: sample-links, mc-lk2, curvature, icn, bounds, table5,
// fit-multidegree, validate-kernel. Exit codes: 0 ok, 2 config error,
// 3 rejection overflow, 4 validation failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rkp/bounds.hpp"
#include "rkp/curves.hpp"
#include "rkp/errors.hpp"
#include "rkp/invariants.hpp"
#include "rkp/kernels.hpp"
#include "rkp/mc.hpp"
#include "rkp/multidegree.hpp"
#include "rkp/rng.hpp"
#include "rkp/sampling.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// accumulates the full report, then emits it to stdout and optionally a file
struct Output {
    std::string text;

    void line(const std::string& s) {
        text += s;
        text += '\n';
    }
    void kv(const std::string& k, const std::string& v) { line(k + "=" + v); }
    void kv(const std::string& k, double v) { kv(k, fmt(v)); }
    void kv(const std::string& k, long long v) { kv(k, std::to_string(v)); }

    int flush(const std::string& out_path) {
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot open " << out_path << "\n";
                return 2;
            }
            f << text;
        }
        return 0;
    }
};

std::vector<double> parse_nums(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw rkp::InvalidSpec("bad number in curve spec: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw rkp::InvalidSpec("empty number list");
    return out;
}

// "fourier:c0,c1,..." or "petal:k,eps"
rkp::SpaceCurve parse_curve(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw rkp::InvalidSpec("curve spec needs kind:params");
    const std::string kind = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);
    if (kind == "fourier") return rkp::fourier_curve(parse_nums(params));
    if (kind == "petal") {
        const auto v = parse_nums(params);
        if (v.size() != 2)
            throw rkp::InvalidSpec("petal spec is petal:k,eps");
        return rkp::petal_curve(static_cast<int>(v[0]), v[1]);
    }
    throw rkp::InvalidSpec("unknown curve kind: " + kind);
}

// "petal-pair:k,eps" or "orthogonal-pair:c0,c1,...;d0,d1,..."
std::pair<rkp::SpaceCurve, rkp::SpaceCurve> parse_pair(
    const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw rkp::InvalidSpec("pair spec needs kind:params");
    const std::string kind = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);
    if (kind == "petal-pair") {
        const auto v = parse_nums(params);
        if (v.size() != 2)
            throw rkp::InvalidSpec("petal-pair spec is petal-pair:k,eps");
        return rkp::petal_link_pair(static_cast<int>(v[0]), v[1]);
    }
    if (kind == "orthogonal-pair") {
        const auto semi = params.find(';');
        if (semi == std::string::npos)
            throw rkp::InvalidSpec("orthogonal-pair spec is c,...;d,...");
        return rkp::orthogonal_fourier_pair(
            parse_nums(params.substr(0, semi)),
            parse_nums(params.substr(semi + 1)));
    }
    throw rkp::InvalidSpec("unknown pair kind: " + kind);
}

void emit_header(Output& out, const std::string& command, bool csv) {
    const std::string prefix = csv ? "# " : "";
    out.line(prefix + "artifact_version=" + kVersion);
    out.line(prefix + "command=" + command);
}

struct CommonOpts {
    std::uint64_t seed = 0;
    int chunks = 1;
    int threads = 1;
    double guard = 1e-12;
    std::string dist = "gaussian";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--chunks", o.chunks, "MC substream count");
    cmd->add_option("--threads", o.threads,
                    "worker threads (result-invariant)");
    cmd->add_option("--guard", o.guard, "relative discriminant guard");
    cmd->add_option("--dist", o.dist, "frame distribution: gaussian|uniform")
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    cmd->add_option("--out", o.out_path, "write the report to this file too");
}

int run_sample_links(const std::string& curve, long long n, int segments,
                     const CommonOpts& o) {
    if (n < 1) throw rkp::InvalidSpec("sample-links: need n >= 1");
    const auto [c1, c2] = parse_pair(curve);
    const auto res = rkp::lk2_sampled(c1, c2, n, segments,
                                      rkp::parse_frame_dist(o.dist), o.seed);
    if (res.estimate.n_rejected * 10 > n)
        throw rkp::TooManyRejections("sample-links: > 10% frames rejected");
    Output out;
    emit_header(out, "sample-links", true);
    out.line("# curve=" + curve + " n=" + std::to_string(n) +
             " segments=" + std::to_string(segments) + " dist=" + o.dist +
             " seed=" + std::to_string(o.seed));
    out.line("# lk_mean=" + fmt(res.lk_mean) +
             " lk_variance=" + fmt(res.lk_variance) +
             " lk2=" + fmt(res.estimate.mean) +
             " stderr=" + fmt(res.estimate.stderr_) +
             " n_rejected=" + std::to_string(res.estimate.n_rejected));
    out.line("sample_index,linking_number,frame_seed");
    for (size_t i = 0; i < res.linking_numbers.size(); ++i)
        out.line(std::to_string(i) + "," + fmt(res.linking_numbers[i]) + "," +
                 std::to_string(o.seed) + ":" + std::to_string(i));
    return out.flush(o.out_path);
}

int run_mc_lk2(const std::string& curve, long long n, const CommonOpts& o) {
    const auto [c1, c2] = parse_pair(curve);
    rkp::MCSpec spec;
    spec.n_samples = n;
    spec.seed = o.seed;
    spec.chunks = o.chunks;
    spec.guard = o.guard;
    spec.threads = o.threads;
    const auto est = rkp::lk2_mc(c1, c2, spec);
    Output out;
    emit_header(out, "mc-lk2", false);
    out.kv("curve", curve);
    out.kv("n_samples", n);
    out.kv("seed", static_cast<long long>(o.seed));
    out.kv("chunks", static_cast<long long>(o.chunks));
    out.kv("guard", o.guard);
    out.kv("lk2", est.mean);
    out.kv("stderr", est.stderr_);
    out.kv("n_used", est.n_used);
    out.kv("n_rejected", est.n_rejected);
    return out.flush(o.out_path);
}

int run_curvature(const std::string& curve, int quad, const std::string& rule,
                  const CommonOpts& o) {
    const auto c = parse_curve(curve);
    rkp::QuadratureSpec q;
    q.points_per_axis = quad;
    q.rule = rule == "trapezoid" ? rkp::QuadRule::trapezoid
                                 : rkp::QuadRule::midpoint;
    const double kappa = rkp::curvature_expectation(c, q);
    Output out;
    emit_header(out, "curvature", false);
    out.kv("curve", curve);
    out.kv("quad", static_cast<long long>(quad));
    out.kv("rule", rule);
    out.kv("curvature", kappa);
    return out.flush(o.out_path);
}

int run_icn(const std::string& curve, int quad, double C_icn,
            const CommonOpts& o) {
    const auto [c1, c2] = parse_pair(curve);
    rkp::QuadratureSpec q;
    q.points_per_axis = quad;
    const double icn = rkp::icn_expectation(c1, c2, q, C_icn);
    Output out;
    emit_header(out, "icn", false);
    out.kv("curve", curve);
    out.kv("quad", static_cast<long long>(quad));
    out.kv("C_icn", C_icn);
    out.kv("icn", icn);
    return out.flush(o.out_path);
}

int run_bounds(const std::string& which, const std::string& curve,
               long long n, double eps, int grid, int quad,
               const CommonOpts& o) {
    Output out;
    emit_header(out, "bounds", false);
    out.kv("which", which);
    out.kv("curve", curve);
    if (which == "curvature") {
        const auto colon = curve.find(':');
        if (colon == std::string::npos || curve.substr(0, colon) != "fourier")
            throw rkp::InvalidSpec("bounds curvature needs a fourier curve");
        const double b =
            rkp::curvature_bound(parse_nums(curve.substr(colon + 1)));
        out.kv("bound", b);
    } else if (which == "icn") {
        const auto colon = curve.find(':');
        if (colon == std::string::npos ||
            curve.substr(0, colon) != "orthogonal-pair")
            throw rkp::InvalidSpec("bounds icn needs an orthogonal-pair");
        const std::string params = curve.substr(colon + 1);
        const auto semi = params.find(';');
        if (semi == std::string::npos)
            throw rkp::InvalidSpec("orthogonal-pair spec is c,...;d,...");
        const auto c = parse_nums(params.substr(0, semi));
        const auto d = parse_nums(params.substr(semi + 1));
        const auto [c1, c2] = rkp::orthogonal_fourier_pair(c, d);
        const double md = rkp::min_distance(c1, c2);
        const auto rep = rkp::icn_bound(c, d, md);
        out.kv("bound", rep.value);
        out.kv("bound_orthogonal", rkp::icn_bound_orthogonal(c, d).value);
        for (const auto& [k, v] : rep.ingredients) out.kv(k, v);
    } else if (which == "lk2") {
        const auto [c1, c2] = parse_pair(curve);
        rkp::MCSpec spec;
        spec.n_samples = n;
        spec.seed = o.seed;
        spec.chunks = o.chunks;
        spec.guard = o.guard;
        spec.threads = o.threads;
        const auto C = rkp::compute_C(c1, c2, spec);
        const double v1 = rkp::max_speed(c1), v2 = rkp::max_speed(c2);
        const double md = rkp::min_distance(c1, c2);
        out.kv("bound", rkp::lk2_bound(v1, v2, md, C.mean));
        out.kv("C", C.mean);
        out.kv("C_stderr", C.stderr_);
        out.kv("v1", v1);
        out.kv("v2", v2);
        out.kv("minDist", md);
        out.kv("seed", static_cast<long long>(o.seed));
    } else if (which == "refined") {
        const auto [c1, c2] = parse_pair(curve);
        const auto rep = rkp::diagonal_split(c1, c2, eps, grid);
        out.kv("bound", rep.value);
        for (const auto& [k, v] : rep.ingredients) out.kv(k, v);
    } else if (which == "unknot") {
        const auto c = parse_curve(curve);
        rkp::QuadratureSpec q;
        q.points_per_axis = quad;
        const double kappa = rkp::curvature_expectation(c, q);
        out.kv("curvature", kappa);
        out.kv("bound", rkp::unknot_fraction_bound(kappa));
    } else {
        throw rkp::InvalidSpec("bounds --which must be one of "
                               "icn|curvature|lk2|refined|unknot");
    }
    return out.flush(o.out_path);
}

int run_table5(double epsilon, long long n_links, int segments,
               long long mc_points, const CommonOpts& o) {
    if (!(epsilon > 0.0)) throw rkp::InvalidSpec("table5: epsilon must be > 0");
    Output out;
    emit_header(out, "table5", true);
    out.line("# epsilon=" + fmt(epsilon) + " n_links=" +
             std::to_string(n_links) + " segments=" +
             std::to_string(segments) + " mc_points=" +
             std::to_string(mc_points) + " seed=" + std::to_string(o.seed) +
             " chunks=" + std::to_string(o.chunks) + " guard=" +
             fmt(o.guard) + " dist=" + o.dist);
    out.line("k,sampled,sampled_stderr,mc,mc_stderr,z,mc_rejected,diverged");
    for (int k : {3, 5, 7, 9}) {
        const auto [c1, c2] = rkp::petal_link_pair(k, epsilon);
        const auto sampled = rkp::lk2_sampled(
            c1, c2, n_links, segments, rkp::parse_frame_dist(o.dist),
            o.seed * 1000 + static_cast<std::uint64_t>(k));
        rkp::MCSpec spec;
        spec.n_samples = mc_points;
        spec.seed = o.seed * 1000 + 100 + static_cast<std::uint64_t>(k);
        spec.chunks = o.chunks;
        spec.guard = o.guard;
        spec.threads = o.threads;
        std::string mc_s = "-", mc_se_s = "-", z_s = "-";
        long long rejected = 0;
        bool diverged = false;
        try {
            const auto mc = rkp::lk2_mc(c1, c2, spec);
            rejected = mc.n_rejected;
            mc_s = fmt(mc.mean);
            mc_se_s = fmt(mc.stderr_);
            const double comb =
                std::sqrt(mc.stderr_ * mc.stderr_ +
                          sampled.estimate.stderr_ * sampled.estimate.stderr_);
            z_s = fmt(comb > 0.0
                          ? std::abs(mc.mean - sampled.estimate.mean) / comb
                          : 0.0);
            // relative-stderr blowup marks the cell numerically unreliable
            if (mc.stderr_ > 0.25 * std::abs(mc.mean)) diverged = true;
        } catch (const rkp::TooManyRejections&) {
            rejected = mc_points; // all information lost
            diverged = true;
        }
        out.line(std::to_string(k) + "," + fmt(sampled.estimate.mean) + "," +
                 fmt(sampled.estimate.stderr_) + "," + mc_s + "," + mc_se_s +
                 "," + z_s + "," + std::to_string(rejected) + "," +
                 (diverged ? "yes" : "no"));
    }
    return out.flush(o.out_path);
}

int run_fit_multidegree(int samples, const CommonOpts& o) {
    const auto cfgs = rkp::sample_configs(samples, o.seed);
    const auto d = rkp::denominator_d_coeffs();
    rkp::ConfigOracle oracle = [&](const std::vector<rkp::Vec>& v) {
        rkp::ConfigPair p;
        p.first = {v[0], v[1], v[2]};
        p.second = {v[3], v[4], v[5]};
        return rkp::lk2_kernel(p);
    };
    const auto fit = rkp::fit_numerator(cfgs, d, oracle);
    Output out;
    emit_header(out, "fit-multidegree", true);
    out.line("# samples=" + std::to_string(samples) + " seed=" +
             std::to_string(o.seed) + " basis_size=" +
             std::to_string(fit.basis.size()) + " rank=" +
             std::to_string(fit.rank) + " residual_rms=" +
             fmt(fit.residual_rms) + " target_rms=" + fmt(fit.target_rms));
    out.line("edges,coefficient");
    for (size_t i = 0; i < fit.basis.size(); ++i) {
        std::string edges;
        for (const auto& [a, b] : fit.basis[i].edges) {
            if (!edges.empty()) edges += "|";
            edges += std::to_string(a + 1) + "-" + std::to_string(b + 1);
        }
        out.line(edges + "," + fmt(fit.coefficients[i]));
    }
    return out.flush(o.out_path);
}

int run_validate_kernel(int trials, long long mc_points, const CommonOpts& o) {
    if (trials < 10)
        throw rkp::InvalidSpec("validate-kernel: need trials >= 10");
    Output out;
    emit_header(out, "validate-kernel", true);
    const auto report =
        rkp::ijkl_consistency_report(std::sqrt(0.5), std::sqrt(0.5));
    out.line("# trials=" + std::to_string(trials) + " mc_points=" +
             std::to_string(mc_points) + " seed=" + std::to_string(o.seed));
    out.line("# table_tuples=" + std::to_string(report.tuples_checked) +
             " table_branch_overlaps=" +
             std::to_string(report.overlapping_branches) +
             " table_kernel_mismatches=" +
             std::to_string(report.kernel_mismatches));
    out.line("trial,kernel,oracle,oracle_stderr,z,pass");
    rkp::RandomStream rs(o.seed, 0);
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
        rkp::ConfigPair p;
        rkp::Vec* slots[6] = {&p.first.a1,  &p.first.a2,  &p.first.a3,
                              &p.second.a1, &p.second.a2, &p.second.a3};
        for (;;) {
            for (auto* v : slots) {
                *v = rkp::Vec(4);
                for (int i = 0; i < 4; ++i) (*v)(i) = rs.normal();
            }
            const double x = p.first.a3.squaredNorm();
            const double y = p.second.a3.squaredNorm();
            const double z = p.first.a3.dot(p.second.a3);
            if ((x * y - z * z) / (x * y) > 0.1) break;
        }
        const double kv = rkp::lk2_kernel(p);
        const auto ov = rkp::lk2_oracle(
            p, mc_points, o.seed * 1000 + static_cast<std::uint64_t>(t));
        const double z =
            ov.stderr_ > 0.0 ? std::abs(kv - ov.mean) / ov.stderr_ : 0.0;
        const bool ok = z <= 4.0;
        if (ok) ++passed;
        out.line(std::to_string(t) + "," + fmt(kv) + "," + fmt(ov.mean) +
                 "," + fmt(ov.stderr_) + "," + fmt(z) + "," +
                 (ok ? "pass" : "fail"));
    }
    const double rate = static_cast<double>(passed) / trials;
    out.line("# pass_rate=" + fmt(rate));
    const int rc = out.flush(o.out_path);
    if (rc != 0) return rc;
    return rate < 0.95 ? 4 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-projection link statistics"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string curve, which = "lk2", rule = "midpoint";
    long long n = 100000, mc_points = 500000, n_links = 10000;
    int segments = 64, quad = 256, grid = 24, samples = 500, trials = 100;
    double epsilon = 1.0, split_eps = 0.5, C_icn = 1.0;

    auto* sl = app.add_subcommand("sample-links",
                                  "sample linking numbers of projections");
    sl->add_option("--curve", curve, "pair spec")->required();
    sl->add_option("--n", n_links, "number of sampled links");
    sl->add_option("--segments", segments, "polygon segments per curve");
    add_common(sl, o);

    auto* mc = app.add_subcommand("mc-lk2", "kernel Monte Carlo of <Lk^2>");
    mc->add_option("--curve", curve, "pair spec")->required();
    mc->add_option("--n", n, "Monte Carlo points");
    add_common(mc, o);

    auto* cv = app.add_subcommand("curvature", "expected total curvature");
    cv->add_option("--curve", curve, "curve spec")->required();
    cv->add_option("--quad", quad, "quadrature points");
    cv->add_option("--rule", rule, "midpoint|trapezoid")
        ->check(CLI::IsMember({"midpoint", "trapezoid"}));
    add_common(cv, o);

    auto* ic = app.add_subcommand("icn", "expected inter-crossing number");
    ic->add_option("--curve", curve, "pair spec")->required();
    ic->add_option("--quad", quad, "quadrature points per axis");
    ic->add_option("--C", C_icn, "calibration constant");
    add_common(ic, o);

    auto* bd = app.add_subcommand("bounds", "analytic bound reports");
    bd->add_option("--which", which, "icn|curvature|lk2|refined|unknot");
    bd->add_option("--curve", curve, "curve or pair spec")->required();
    bd->add_option("--n", n, "Monte Carlo points for the C constant");
    bd->add_option("--epsilon", split_eps, "diagonal-split half width");
    bd->add_option("--grid", grid, "diagonal-split grid");
    bd->add_option("--quad", quad, "quadrature points (unknot)");
    add_common(bd, o);

    auto* t5 = app.add_subcommand("table5", "estimator comparison table");
    t5->add_option("--epsilon", epsilon, "taper height");
    t5->add_option("--links", n_links, "sampled links per row");
    t5->add_option("--segments", segments, "polygon segments");
    t5->add_option("--mc-points", mc_points, "kernel MC points per row");
    add_common(t5, o);

    auto* fm = app.add_subcommand("fit-multidegree",
                                  "fit the kernel numerator basis");
    fm->add_option("--samples", samples, "configuration samples");
    add_common(fm, o);

    auto* vk = app.add_subcommand("validate-kernel",
                                  "kernel vs oracle validation report");
    vk->add_option("--trials", trials, "random configurations");
    vk->add_option("--mc-points", mc_points, "oracle samples per trial");
    add_common(vk, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sl->parsed()) return run_sample_links(curve, n_links, segments, o);
        if (mc->parsed()) return run_mc_lk2(curve, n, o);
        if (cv->parsed()) return run_curvature(curve, quad, rule, o);
        if (ic->parsed()) return run_icn(curve, quad, C_icn, o);
        if (bd->parsed())
            return run_bounds(which, curve, n, split_eps, grid, quad, o);
        if (t5->parsed())
            return run_table5(epsilon, n_links, segments, mc_points, o);
        if (fm->parsed()) return run_fit_multidegree(samples, o);
        if (vk->parsed()) return run_validate_kernel(trials, mc_points, o);
    } catch (const rkp::TooManyRejections& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rkp::IllConditioned& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const rkp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
