#include "rkp/rng.hpp"

#include <cmath>

namespace rkp {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= 0xD1B54A32D192ED03ull * (stream_id + 1);
    std::uint64_t b = splitmix64(s);
    gen_.seed(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

double RandomStream::uniform() {
    // top 53 bits -> double in [0,1)
    return std::ldexp(static_cast<double>(gen_() >> 11), -53);
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
    // Box-Muller; std::normal_distribution is not bit-stable across libraries
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

} // namespace rkp
