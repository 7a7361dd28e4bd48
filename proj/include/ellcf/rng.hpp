#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ellcf::sampling {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed is the key; the stream id fills the upper half of the
/// 128-bit counter and the block index the lower half, so every
/// (seed, stream) pair owns an independent 2^64-block sequence.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform double in the open interval (0, 1) with 53 random bits.
    double uniform01();

    /// The raw bijection, exposed for known-answer tests.
    static Block bijection(Block counter, Key key);

private:
    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int used_ = 4;
};

/// Identity of a reproducible random stream.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    Philox4x32 engine() const { return {seed, stream_id}; }
};

}  // namespace ellcf::sampling
