#pragma once
#include <Eigen/Dense>
#include <cstdint>

namespace rkp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Monte Carlo result. stderr is the usual sqrt((E[f^2]-E[f]^2)/n) scaled by
// the integration volume where applicable.
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long long n_used = 0;
    long long n_rejected = 0;
    std::uint64_t seed = 0;
};

struct MCSpec {
    long long n_samples = 100000;
    std::uint64_t seed = 0;
    int chunks = 1;
    double guard = 1e-12; // relative discriminant threshold
    int threads = 1;
};

} // namespace rkp
