#include "rkp/mc.hpp"

#include <cmath>
#include <thread>

#include "rkp/errors.hpp"
#include "rkp/invariants.hpp"
#include "rkp/kernels.hpp"
#include "rkp/rng.hpp"

namespace rkp {

namespace {

struct Partial {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    long long rejected = 0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Partial& o) {
        if (o.n == 0) {
            rejected += o.rejected;
            return;
        }
        const double d = o.mean - mean;
        const long long tot = n + o.n;
        m2 += o.m2 + d * d * (static_cast<double>(n) * o.n / tot);
        mean += d * o.n / tot;
        n = tot;
        rejected += o.rejected;
    }
};

} // namespace

MCEstimate mc_integrate(const BoxIntegrand& f,
                        const std::vector<std::pair<double, double>>& box,
                        const MCSpec& spec) {
    const int dim = static_cast<int>(box.size());
    double volume = 1.0;
    for (const auto& [lo, hi] : box) volume *= hi - lo;
    const int chunks = std::max(spec.chunks, 1);
    std::vector<Partial> partials(chunks);

    auto run_chunk = [&](int c) {
        const long long base = spec.n_samples / chunks;
        const long long n_c = base + (c < spec.n_samples % chunks ? 1 : 0);
        RandomStream rs(spec.seed, static_cast<std::uint64_t>(c));
        std::vector<double> x(dim);
        Partial part;
        for (long long s = 0; s < n_c; ++s) {
            for (int d = 0; d < dim; ++d)
                x[d] = rs.uniform(box[d].first, box[d].second);
            double val = 0.0;
            if (f(x, val))
                part.add(val);
            else
                ++part.rejected;
        }
        partials[c] = part;
    };

    const int threads = std::max(1, std::min(spec.threads, chunks));
    if (threads == 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < chunks; c += threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    Partial total;
    for (const auto& p : partials) total.merge(p); // fixed merge order

    if (total.rejected * 10 > spec.n_samples)
        throw TooManyRejections("mc_integrate: > 10% of samples rejected");
    MCEstimate est;
    est.mean = volume * total.mean;
    est.stderr_ =
        total.n >= 2 ? volume * std::sqrt((total.m2 / total.n) / total.n)
                     : 0.0;
    est.n_used = total.n;
    est.n_rejected = total.rejected;
    est.seed = spec.seed;
    return est;
}

MCEstimate lk2_mc(const SpaceCurve& c1, const SpaceCurve& c2,
                  const MCSpec& spec) {
    const double pref = 1.0 / (16.0 * M_PI * M_PI);
    std::vector<std::pair<double, double>> box = {{0.0, c1.period},
                                                  {0.0, c2.period},
                                                  {0.0, c1.period},
                                                  {0.0, c2.period}};
    auto f = [&](const std::vector<double>& x, double& out) {
        const double t = x[0], s = x[1], tp = x[2], sp = x[3];
        ConfigPair p;
        p.first = {c1.deriv(t), c2.deriv(s), c2.eval(s) - c1.eval(t)};
        p.second = {c1.deriv(tp), c2.deriv(sp), c2.eval(sp) - c1.eval(tp)};
        try {
            out = pref * lk2_kernel(p, spec.guard);
        } catch (const NearSingular&) {
            return false;
        }
        return true;
    };
    return mc_integrate(f, box, spec);
}

SampledLinks lk2_sampled(const SpaceCurve& c1, const SpaceCurve& c2,
                         long long n_links, int segments, FrameDist dist,
                         std::uint64_t seed) {
    if (segments < 8)
        throw InvalidSpec("lk2_sampled: need segments >= 8");
    if (n_links < 1)
        throw InvalidSpec("lk2_sampled: need n_links >= 1");
    const auto poly1 = polyline_sample(c1, segments);
    const auto poly2 = polyline_sample(c2, segments);
    SampledLinks out;
    out.linking_numbers.reserve(n_links);
    long long rejected = 0;
    for (long long i = 0; i < n_links; ++i) {
        RandomStream rs(seed, static_cast<std::uint64_t>(i));
        double lk = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
            try {
                const Mat frame = sample_frame(c1.dim, dist, rs);
                PolyLink link{project_polyline(poly1, frame),
                              project_polyline(poly2, frame)};
                lk = linking_number(link);
                ok = true;
            } catch (const DegenerateInput&) {
                ++rejected; // resample within the same substream
            }
        }
        if (!ok)
            throw DegenerateInput("lk2_sampled: persistent degenerate sample");
        out.linking_numbers.push_back(lk);
    }
    // mean^2 + variance (population) is exactly the sample mean of Lk^2
    double mean = 0.0;
    for (double lk : out.linking_numbers) mean += lk;
    mean /= n_links;
    double var = 0.0, m2sq = 0.0, meansq = 0.0;
    long long n = 0;
    for (double lk : out.linking_numbers) {
        var += (lk - mean) * (lk - mean);
        ++n;
        const double x = lk * lk;
        const double d = x - meansq;
        meansq += d / n;
        m2sq += d * (x - meansq);
    }
    var /= n_links;
    out.lk_mean = mean;
    out.lk_variance = var;
    out.estimate.mean = mean * mean + var;
    out.estimate.stderr_ =
        n_links >= 2 ? std::sqrt((m2sq / n_links) / n_links) : 0.0;
    out.estimate.n_used = n_links;
    out.estimate.n_rejected = rejected;
    out.estimate.seed = seed;
    return out;
}

} // namespace rkp
