#ifndef PLIFT_RNG_HPP
#define PLIFT_RNG_HPP

#include <cstdint>

namespace plift {

// Deterministic splitmix64 stream; scenarios and randomized tests derive all
// coefficients from it so results are reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound).
    uint64_t below(uint64_t bound) { return next() % bound; }

    // Small integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }

private:
    uint64_t state_;
};

} // namespace plift

#endif
