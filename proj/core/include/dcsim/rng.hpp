#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dcsim {

// Finalizer step of the splitmix64 generator. Used to derive run seeds and
// stream seeds; one call fully decorrelates nearby inputs.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

// PCG-XSH-RR 64/32. Small state, 2^63 distinct streams selected by the
// increment, and cheap enough that per-sample draws never show in profiles.
class Pcg32 {
public:
    Pcg32() : Pcg32(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL) {}

    Pcg32(std::uint64_t seed, std::uint64_t stream) {
        state_ = 0;
        inc_ = (stream << 1) | 1;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted =
            static_cast<std::uint32_t>(((old >> 18) ^ old) >> 27);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59);
        return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

// One named random stream. Streams with the same (seed, name) produce the
// same sequence regardless of what any other stream consumed, which is what
// makes paired-mode runs share a channel realization.
class RngStream {
public:
    RngStream() = default;

    RngStream(std::uint64_t run_seed, std::string_view name)
        : name_(name),
          gen_(splitmix64_mix(run_seed ^ fnv1a64(name)),
               fnv1a64(name)) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        ++draws_;
        std::uint64_t bits = gen_.next_u64();
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    // Standard normal via inverse-CDF (Acklam's rational approximation,
    // relative error < 1.15e-9). Exactly one uniform per variate keeps the
    // draw count a pure function of how many samples were requested.
    double normal();

    std::uint64_t next_u64() {
        ++draws_;
        return gen_.next_u64();
    }

    std::uint64_t draw_count() const { return draws_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Pcg32 gen_;
    std::uint64_t draws_ = 0;
};

// The four streams every run owns. Consumers take the stream they were
// assigned and nothing else; sharing a stream across concerns would couple
// their draw sequences and break run pairing.
struct RngSet {
    explicit RngSet(std::uint64_t run_seed)
        : channel(run_seed, "channel"),
          phy(run_seed, "phy"),
          control(run_seed, "control"),
          traffic(run_seed, "traffic") {}

    RngStream channel;
    RngStream phy;
    RngStream control;
    RngStream traffic;
};

// Seed for replicate i of a batch. Spreads consecutive replicates across the
// seed space so per-run streams stay uncorrelated.
constexpr std::uint64_t replicate_seed(std::uint64_t master_seed, int replicate) {
    return splitmix64_mix(master_seed +
                          0x9e3779b97f4a7c15ULL *
                              static_cast<std::uint64_t>(replicate + 1));
}

}  // namespace dcsim
