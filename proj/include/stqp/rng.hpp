#pragma once

#include <cstdint>

namespace stqp {

// Counter-based generator: the k-th output is a pure function of
// (master_seed, stream_id, k), so parallel work split across streams is
// bit-identical to the serial order. Core step is splitmix64; streams
// are separated by double-mixing the seed with the stream id.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
        : state_(mix(mix(master_seed + golden) ^ (stream_id + golden))) {}

    std::uint64_t next_u64() {
        state_ += golden;
        return mix(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log argument.
    double next_uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace stqp
