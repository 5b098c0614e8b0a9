#ifndef VQNOISE_RNG_HPP
#define VQNOISE_RNG_HPP

#include <cstdint>
#include <random>

namespace vqnoise {

// splitmix64 step; used to derive independent substreams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic substream seed for (master, index). Trajectory i always gets
// the same stream no matter how trajectories are partitioned across threads.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x2545f4914f6cdd1dULL * (index + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64{substream_seed(master, index)};
}

} // namespace vqnoise

#endif
