#pragma once

#include <cstdint>
#include <random>

namespace swarmsyn {

/// Seeded stream with a fixed double mapping so that draws are reproducible
/// across standard library implementations.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

  private:
    std::mt19937_64 engine_;
};

/// splitmix64 finaliser; derives decorrelated child seeds from (seed, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace swarmsyn
