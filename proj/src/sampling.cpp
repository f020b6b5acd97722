#include "rkp/sampling.hpp"

#include "rkp/errors.hpp"
#include "rkp/linalg.hpp"

namespace rkp {

FrameDist parse_frame_dist(const std::string& s) {
    if (s == "gaussian") return FrameDist::gaussian;
    if (s == "uniform") return FrameDist::uniform;
    throw InvalidSpec("dist must be 'gaussian' or 'uniform'");
}

Mat sample_frame(int n, FrameDist dist, RandomStream& stream) {
    if (n < 4)
        throw InvalidSpec("sample_frame: need ambient dim >= 4");
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat u(n, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 3; ++j)
                u(i, j) = dist == FrameDist::gaussian
                              ? stream.normal()
                              : stream.uniform(-1.0, 1.0);
        try {
            return orthonormalize(u);
        } catch (const DegenerateInput&) {
            continue;
        }
    }
    throw DegenerateInput("sample_frame: repeated degenerate draws");
}

std::vector<Vec> project_polyline(const std::vector<Vec>& points,
                                  const Mat& frame) {
    std::vector<Vec> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != frame.rows())
            throw ShapeError("project_polyline: dimension mismatch");
        out.push_back(frame.transpose() * p);
    }
    return out;
}

} // namespace rkp
