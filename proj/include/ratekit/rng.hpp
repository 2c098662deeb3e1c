#pragma once

#include <array>
#include <cstdint>

namespace ratekit {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 64-bit
// key is the user seed; the upper counter words carry a 64-bit stream id, so
// (seed, stream) pairs give independent, reproducible substreams regardless
// of thread scheduling. (replicate, purpose) pairs are packed into the
// stream id by the callers.
class Philox4x32 {
public:
    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53 random bits.
    double next_double();

    // Standard normal via Box-Muller (pairs cached).
    double next_normal();

    // Uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_index_ = 0;
    std::uint64_t stream_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace ratekit
