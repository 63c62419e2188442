#pragma once

#include <cstdint>

namespace bls {

/// Philox4x32-10 counter-based generator.  Each (seed, stream) pair owns an
/// independent sequence addressed purely by a counter, so parallel workers
/// produce identical output regardless of scheduling.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        std::uint64_t hi = buf_[--have_];
        std::uint64_t lo = buf_[--have_];
        return (hi << 32) | lo;
    }

    /// Uniform in (0, 1); never returns 0 so log() is safe.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two uniforms per pair; trig form).
    double normal();

  private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t counter_ = 0;
    std::uint32_t buf_[4] = {};
    int have_ = 0;
    double cached_normal_ = 0.0;
    bool have_normal_ = false;
};

}  // namespace bls
