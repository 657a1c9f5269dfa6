#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace noisylabels {

// splitmix64 finalizer; used both as a mixing step and for deriving child
// seeds from (master_seed, index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One child stream per (master_seed, index). Trials draw from disjoint
// streams, so scheduling order never affects results.
inline std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index + 1));
}

// mt19937_64 with hand-rolled uniform and Box-Muller normal draws. The
// standard distributions are implementation-defined, so we avoid them to
// keep sequences reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; the sine mate is cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace noisylabels
