#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "rkp/types.hpp"

namespace rkp {

// multigraph on 6 vertices; an edge (i,j), i <= j 0-based, stands for the
// inner product A_i . A_j, a loop for a squared norm. Stored as the sorted
// multiset of edges with multiplicities expanded.
struct MultiGraph {
    std::vector<std::pair<int, int>> edges;
};

// exhaustive duplicate-free enumeration of multigraphs with the given
// per-vertex degree sequence (a loop adds 2 to its vertex degree)
std::vector<MultiGraph> enumerate_multigraphs(const std::vector<int>& degrees);

// drop graphs containing edge (0,1) or (3,4) — the a1.a2 / a1'.a2' factors
// killed by the antisymmetry of the kernel
std::vector<MultiGraph> antisymmetry_filter(const std::vector<MultiGraph>& gs);

// product over edges of vectors[i] . vectors[j]
double monomial_eval(const MultiGraph& g, const std::vector<Vec>& vectors);

// Coefficients of |a3|^4 |a3'|^4 D^3 in the P-basis
// P_{p+1} = |a3|^{2(5-p)} |a3'|^{2(5-p)} (a3.a3')^{2p}, obtained by
// brute-force polynomial expansion (not transcribed).
std::vector<double> denominator_d_coeffs();

// sum_p d_p P_p evaluated on a configuration (vectors[2] = a3,
// vectors[5] = a3')
double denominator_eval(const std::vector<double>& d,
                        const std::vector<Vec>& vectors);

// Gaussian R^4 configurations with relative discriminant >= disc_guard
std::vector<std::vector<Vec>> sample_configs(int n, std::uint64_t seed,
                                             double disc_guard = 0.05);

struct FitResult {
    std::vector<MultiGraph> basis;       // retained monomials
    std::vector<double> coefficients;    // minimum-norm solution
    double residual_rms = 0.0;           // over held-out samples
    double target_rms = 0.0;
    int rank = 0;                        // design-matrix rank
};

using ConfigOracle = std::function<double(const std::vector<Vec>&)>;

// Least-squares fit of oracle(x) * sqrt(sum_p d_p P_p(x)) against the 42
// retained multidegree monomials; minimum-norm solution via rank-revealing
// factorization, residual reported over a 20% held-out tail. Throws
// IllConditioned when the held-out residual exceeds 1e-3 of the target RMS.
FitResult fit_numerator(const std::vector<std::vector<Vec>>& samples,
                        const std::vector<double>& d_coeffs,
                        const ConfigOracle& oracle);

} // namespace rkp
