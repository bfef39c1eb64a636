#pragma once

#include <cstdint>
#include <string_view>

namespace mlab {

// Counter-based generator: draw i of stream `key` is mix(key + i*GAMMA).
// Splitting derives an independent key from a label, so every random number
// in an experiment is a pure function of (seed, labels..., draw index) and
// parallel scheduling cannot perturb results.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t hash_label(std::string_view label) {
        std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    static CounterRng keyed(std::uint64_t seed, std::string_view label) {
        return CounterRng(mix(seed ^ hash_label(label)));
    }

    CounterRng split(std::uint64_t index) const {
        return CounterRng(mix(key_ ^ (0x9E3779B97F4A7C15ULL + index)));
    }
    CounterRng split(std::string_view label) const {
        return CounterRng(mix(key_ ^ hash_label(label)));
    }

    std::uint64_t next() { return mix(key_ + (++ctr_) * 0x9E3779B97F4A7C15ULL); }

    // uniform in [0,1), 53 random bits
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int sign() { return (next() & 1) ? 1 : -1; }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace mlab
