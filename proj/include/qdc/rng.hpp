#pragma once

// Deterministic random streams. Everything that samples takes an explicit
// 64-bit seed, and independent trials get their own stream derived from
// (base seed, trial index), so results do not depend on evaluation order
// and a failure can be replayed from the seed stored in its report entry.
//
// Gaussians come from Box-Muller over splitmix64 rather than
// std::normal_distribution, whose algorithm the standard leaves to the
// implementation; a fixed seed must mean the same samples everywhere.

#include <cstdint>
#include <vector>

namespace qdc {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Uniform in (0, 1]; never returns 0 so logs stay finite.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian();

    // Point on the probability simplex, strictly positive entries.
    std::vector<double> simplex(int k);

  private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qdc
