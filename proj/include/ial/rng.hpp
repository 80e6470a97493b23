#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace ial {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// A stream is identified by (seed, stream_id): the seed is the 64-bit Philox
// key and the stream id fills the upper half of the 128-bit counter, so
// distinct stream ids never share a counter block. The lower half counts
// blocks drawn so far. Copying a stream replays the same sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random mantissa bits.
    double uniform();
    // Uniform on (0, 1): the 53-bit grid shifted by half a step.
    double uniform_open();
    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    // Independent child stream keyed by this stream's identity and a label.
    // Does not depend on, or advance, the draw position.
    RngStream split(std::uint64_t label) const;

    // One raw Philox4x32-10 block; exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> ctr,
                                                     std::array<std::uint32_t, 2> key);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int cursor_ = 4;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Deterministic map from (base_seed, label path) to a stream. The path length
// is folded into the hash so [] , [0] and [0, 0] all differ.
RngStream derive_stream(std::uint64_t base_seed, std::span<const std::uint64_t> labels);
RngStream derive_stream(std::uint64_t base_seed, std::initializer_list<std::uint64_t> labels);

// Distributions. All are written against RngStream only, so draw sequences
// are identical on every platform (unlike <random>'s distributions).
double sample_normal(RngStream& rng);
double sample_gamma(RngStream& rng, double shape);
double sample_beta(RngStream& rng, double a, double b);
std::int64_t sample_binomial(RngStream& rng, std::int64_t trials, double p);

} // namespace ial
