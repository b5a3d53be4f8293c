#pragma once

#include <cstdint>
#include <random>

namespace sfd {

// Seed-deterministic random source. All draws go through fixed formulas on
// top of mt19937_64 rather than std distributions, whose output is
// implementation defined; identical seeds give identical streams on every
// platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), rejection sampled.
    std::uint64_t uniform_below(std::uint64_t n);

    // Standard normal via Box-Muller; draws come in pairs, the spare is cached.
    double normal();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace sfd
