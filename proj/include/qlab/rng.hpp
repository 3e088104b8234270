#pragma once

#include <cmath>
#include <cstdint>

namespace qlab {

// Counter-based deterministic stream. A (master_seed, stream_id) pair fixes
// the whole scalar sequence independently of thread scheduling; experiments
// derive one stream per trial via derive_stream.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed), stream_id_(stream_id) {
        state_ = mix(mix(master_seed) ^ mix(stream_id ^ 0x9e3779b97f4a7c15ULL));
        if (state_ == 0) state_ = 0x106689d45497fdb5ULL;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; avoids implementation-defined
    // std::normal_distribution so sequences are stable across toolchains.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stable substream id for trial t of experiment tag e.
inline std::uint64_t substream_id(std::uint64_t experiment_tag, std::uint64_t trial) {
    std::uint64_t z = experiment_tag * 0xff51afd7ed558ccdULL + trial + 1;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

inline RngStream derive_stream(const RngStream& base, std::uint64_t experiment_tag,
                               std::uint64_t trial) {
    return RngStream(base.master_seed(),
                     base.stream_id() ^ substream_id(experiment_tag, trial));
}

}  // namespace qlab
