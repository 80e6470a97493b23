#include "ial/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ial {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

} // namespace

std::array<std::uint32_t, 4> RngStream::philox_block(std::array<std::uint32_t, 4> ctr,
                                                     std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill()
{
    const std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(block_),
                                           static_cast<std::uint32_t>(block_ >> 32),
                                           static_cast<std::uint32_t>(stream_id_),
                                           static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                           static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox_block(ctr, key);
    ++block_;
    cursor_ = 0;
}

std::uint64_t RngStream::next_u64()
{
    if (cursor_ >= 4) refill();
    const std::uint64_t lo = buffer_[cursor_];
    const std::uint64_t hi = buffer_[cursor_ + 1];
    cursor_ += 2;
    return lo | (hi << 32);
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

double RngStream::uniform_open()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * kTwoPow53Inv;
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound)
{
    if (bound == 0) throw std::invalid_argument("uniform_index bound must be positive");
    // Lemire's multiply-shift with rejection.
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<u128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::split(std::uint64_t label) const
{
    return RngStream(seed_, mix64(stream_id_ ^ mix64(label + 0x632BE59BD9B4E019ull)));
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream derive_stream(std::uint64_t base_seed, std::span<const std::uint64_t> labels)
{
    std::uint64_t h = mix64(base_seed);
    for (std::uint64_t label : labels) h = mix64(h ^ mix64(label));
    h = mix64(h ^ labels.size());
    return RngStream(base_seed, h);
}

RngStream derive_stream(std::uint64_t base_seed, std::initializer_list<std::uint64_t> labels)
{
    return derive_stream(base_seed, std::span<const std::uint64_t>(labels.begin(), labels.size()));
}

// Marsaglia polar method; the second variate of each pair is discarded so a
// stream carries no sampler state beyond its counter.
double sample_normal(RngStream& rng)
{
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

// Marsaglia & Tsang (2000); shapes below one use the U^(1/a) boost.
double sample_gamma(RngStream& rng, double shape)
{
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
    if (shape < 1.0) {
        const double g = sample_gamma(rng, shape + 1.0);
        return g * std::pow(rng.uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(RngStream& rng, double a, double b)
{
    const double x = sample_gamma(rng, a);
    const double y = sample_gamma(rng, b);
    return x / (x + y);
}

// Geometric waiting-time method: count the success gaps that fit in `trials`.
// Expected cost is trials * min(p, 1 - p) + 1 uniforms.
std::int64_t sample_binomial(RngStream& rng, std::int64_t trials, double p)
{
    if (trials < 0) throw std::invalid_argument("binomial trials must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability outside [0, 1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - sample_binomial(rng, trials, 1.0 - p);

    const double log_q = std::log1p(-p);
    std::int64_t successes = 0;
    double position = 0.0;
    for (;;) {
        position += std::ceil(std::log(rng.uniform_open()) / log_q);
        if (position > static_cast<double>(trials)) return successes;
        ++successes;
    }
}

} // namespace ial
