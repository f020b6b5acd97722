#pragma once
#include <cstdint>
#include <random>

namespace rkp {

// splitmix64 step, used to mix (seed, stream_id) into generator keys
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic random stream with independently derivable substreams.
// The generator is mt19937_64 keyed by splitmix64-mixed (seed, stream_id);
// uniforms come from the top 53 bits and normals from Box-Muller, so the
// produced doubles are identical across platforms.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double normal();                        // standard normal

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::mt19937_64 gen_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace rkp
