#pragma once
#include <string>
#include <vector>

#include "rkp/rng.hpp"
#include "rkp/types.hpp"

namespace rkp {

// gaussian entries give the rotation-invariant measure on Gr(n,3);
// uniform (-1,1) entries are kept as an alternative sampler.
enum class FrameDist { gaussian, uniform };

FrameDist parse_frame_dist(const std::string& s);

// Random n x 3 column-orthonormal frame. Retries up to 8 times on
// degenerate draws, then throws DegenerateInput.
Mat sample_frame(int n, FrameDist dist, RandomStream& stream);

// Coordinates of the orthogonal projections in the frame basis: y = F^T x.
std::vector<Vec> project_polyline(const std::vector<Vec>& points,
                                  const Mat& frame);

} // namespace rkp
