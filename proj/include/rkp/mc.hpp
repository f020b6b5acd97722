#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "rkp/curves.hpp"
#include "rkp/sampling.hpp"
#include "rkp/types.hpp"

namespace rkp {

// integrand: fills out and returns true, or returns false to reject the
// sample (rejections are counted, never zero-imputed)
using BoxIntegrand =
    std::function<bool(const std::vector<double>& x, double& out)>;

// Plain Monte Carlo over a box: volume * mean with
// stderr = volume * sqrt((E[f^2]-E[f]^2)/n). Deterministic for fixed
// (seed, chunks): one substream per chunk, partials merged in chunk order,
// so the thread count never changes the result. Throws TooManyRejections
// when more than 10% of samples are rejected.
MCEstimate mc_integrate(const BoxIntegrand& f,
                        const std::vector<std::pair<double, double>>& box,
                        const MCSpec& spec);

// <Lk^2> = (1/16 pi^2) * integral of the closed-form kernel over the
// product of the two parameter domains, each taken twice.
MCEstimate lk2_mc(const SpaceCurve& c1, const SpaceCurve& c2,
                  const MCSpec& spec);

struct SampledLinks {
    MCEstimate estimate;  // mean = mean^2 + variance of the linking numbers
    double lk_mean = 0.0;
    double lk_variance = 0.0;
    std::vector<double> linking_numbers;
};

// Direct estimator: draw frames, project both curves to polygons, compute
// the linking number per sample; <Lk^2> = mean^2 + variance. Sample i uses
// substream (seed, i) so per-sample results are independently reproducible.
SampledLinks lk2_sampled(const SpaceCurve& c1, const SpaceCurve& c2,
                         long long n_links, int segments, FrameDist dist,
                         std::uint64_t seed);

} // namespace rkp
