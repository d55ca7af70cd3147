#pragma once

#include <cstdint>
#include <limits>

// Counter-based random number generation.  Each simulated path owns an
// independent substream keyed by (seed, stream_id); draws are a pure
// function of that key and the draw index, so ensembles are identical
// across runs and worker counts.

namespace srd {

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Philox2x64-10: two 64-bit counter words, one 64-bit key word, ten
// multiply-xor rounds.  Satisfies UniformRandomBitGenerator, so the
// standard <random> distributions run on top of it.
class PhiloxEngine {
  public:
    using result_type = std::uint64_t;

    explicit PhiloxEngine(RngStream s) : key_base_(s.seed), stream_(s.stream_id) {}
    PhiloxEngine(std::uint64_t seed, std::uint64_t stream_id)
        : key_base_(seed), stream_(stream_id) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint64_t x0 = block_++;
        std::uint64_t x1 = stream_;
        std::uint64_t key = key_base_;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(kMultiplier) * x0;
            const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            const std::uint64_t lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ key ^ x1;
            x1 = lo;
            key += kWeyl;
        }
        spare_ = x1;
        have_spare_ = true;
        return x0;
    }

    // Uniform on (0, 1), never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal through the inverse CDF; consumes exactly one
    // 64-bit word, which keeps increment streams alignable across calls.
    double normal();

  private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_base_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

// Inverse of the standard normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);

inline double PhiloxEngine::normal() { return inverse_normal_cdf(uniform01()); }

}  // namespace srd
