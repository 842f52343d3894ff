#ifndef CAUSAL_SSD_RANDOM_HPP
#define CAUSAL_SSD_RANDOM_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace causal_ssd {

/**
 * Seeded pseudo-random stream addressed by (master seed, path).
 *
 * The generator is xoshiro256** whose state is derived by hashing the seed and
 * every path element with splitmix64. Two streams with the same seed and path
 * produce the same sequence; streams with different paths are
 * treated as independent. Monte Carlo tasks take a substream per task so results
 * do not depend on evaluation order or worker count.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path = {});

    // Fresh stream at path() + extra. Does not advance *this.
    RandomStream substream(std::initializer_list<std::uint64_t> extra) const;
    RandomStream substream(std::uint64_t extra) const { return substream({extra}); }

    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<std::uint64_t>& path() const noexcept { return path_; }

    std::uint64_t next_u64() noexcept;

    // Uniform on the open interval (0, 1).
    double uniform() noexcept;

    // Standard normal by the ziggurat method.
    double standard_normal() noexcept;

private:
    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::array<std::uint64_t, 4> state_{};
};

} // namespace causal_ssd

#endif // CAUSAL_SSD_RANDOM_HPP
