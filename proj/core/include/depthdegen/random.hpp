#pragma once

// Counter-based random streams. Every consumer derives an independent
// stream from (seed, domain, index), so a replica's draws never depend on
// which thread ran it or in what order.

#include <array>
#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace depthdegen {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeylA;
                key[1] += kWeylB;
            }
            const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
            ctr = Counter{static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                          static_cast<std::uint32_t>(p1),
                          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                          static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
};

/// SplitMix64 finalizer, used to spread user seeds over the Philox key.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Which consumer a stream belongs to; keeps e.g. input-pair draws and
/// weight draws disjoint under the same user seed.
enum class StreamDomain : std::uint64_t {
    input_pair = 1,
    network_weights = 2,
    gaussian_chain = 3,
    test = 99,
};

/// UniformRandomBitGenerator over one Philox stream. The 128-bit counter is
/// (block index, stream index); the key is derived from (seed, domain).
class CounterStream {
public:
    using result_type = std::uint64_t;

    CounterStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index) noexcept {
        const std::uint64_t k = mix64(seed ^ mix64(static_cast<std::uint64_t>(domain)));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        stream_lo_ = static_cast<std::uint32_t>(index);
        stream_hi_ = static_cast<std::uint32_t>(index >> 32);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        if (next_ == kBufferSize) {
            refill();
        }
        return buffer_[next_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr int kBlocks = 8;
    static constexpr int kBufferSize = 2 * kBlocks;

    // Same arithmetic as Philox4x32::block, laid out lane-wise over kBlocks
    // consecutive counters so the rounds vectorize.
    void refill() noexcept {
        std::array<std::uint32_t, kBlocks> c0{}, c1{}, c2{}, c3{};
        for (int i = 0; i < kBlocks; ++i) {
            const std::uint64_t b = block_ + static_cast<std::uint64_t>(i);
            c0[i] = static_cast<std::uint32_t>(b);
            c1[i] = static_cast<std::uint32_t>(b >> 32);
            c2[i] = stream_lo_;
            c3[i] = stream_hi_;
        }
        std::uint32_t k0 = key_[0];
        std::uint32_t k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += Philox4x32::kWeylA;
                k1 += Philox4x32::kWeylB;
            }
            for (int i = 0; i < kBlocks; ++i) {
                const std::uint64_t p0 = std::uint64_t{Philox4x32::kMulA} * c0[i];
                const std::uint64_t p1 = std::uint64_t{Philox4x32::kMulB} * c2[i];
                const auto n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1[i] ^ k0;
                const auto n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3[i] ^ k1;
                c1[i] = static_cast<std::uint32_t>(p1);
                c3[i] = static_cast<std::uint32_t>(p0);
                c0[i] = n0;
                c2[i] = n2;
            }
        }
        for (int i = 0; i < kBlocks; ++i) {
            buffer_[2 * i] = (std::uint64_t{c1[i]} << 32) | c0[i];
            buffer_[2 * i + 1] = (std::uint64_t{c3[i]} << 32) | c2[i];
        }
        block_ += kBlocks;
        next_ = 0;
    }

    Philox4x32::Key key_{};
    std::uint32_t stream_lo_ = 0;
    std::uint32_t stream_hi_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, kBufferSize> buffer_{};
    int next_ = kBufferSize;
};

/// Standard normal draws (ziggurat, Boost.Random) from a CounterStream.
class NormalSampler {
public:
    double operator()(CounterStream& stream) { return dist_(stream); }

private:
    boost::random::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace depthdegen
