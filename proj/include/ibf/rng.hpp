#pragma once

#include <cmath>
#include <cstdint>

namespace ibf {

/// Counter-based deterministic random stream keyed by (seed, stream_id).
///
/// Each output is a pure hash of (seed, stream_id, counter), so identical keys
/// give bit-identical sequences on every platform, and parallel work items can
/// be given distinct stream_ids without any shared state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          base_(mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(stream_id + 0xBF58476D1CE4E5B9ULL))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Independent stream derived from this one; does not consume state.
    RngStream substream(std::uint64_t id) const {
        return RngStream(seed_, mix(stream_id_ + 0x9E3779B97F4A7C15ULL * (id + 1)));
    }

    std::uint64_t next_u64() { return mix(base_ + 0x9E3779B97F4A7C15ULL * (++counter_)); }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be >= 1.
    std::uint64_t uniform_below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (consumes two uniforms).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27; z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

} // namespace ibf
