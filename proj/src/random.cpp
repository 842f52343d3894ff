#include "causal_ssd/random.hpp"

#include <cmath>

namespace causal_ssd {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path)
    : seed_(seed), path_(std::move(path)) {
    std::uint64_t h = seed;
    std::uint64_t acc = splitmix64(h);
    for (std::uint64_t p : path_) {
        // Chained, so {1, 0} and {0, 1} give different states.
        std::uint64_t x = acc ^ (p + 0x632BE59BD9B4E019ULL);
        acc = splitmix64(x);
    }
    std::uint64_t s = acc;
    for (auto& word : state_) word = splitmix64(s);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

RandomStream RandomStream::substream(std::initializer_list<std::uint64_t> extra) const {
    std::vector<std::uint64_t> p = path_;
    p.insert(p.end(), extra.begin(), extra.end());
    return RandomStream(seed_, std::move(p));
}

std::uint64_t RandomStream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() noexcept {
    // 53 random bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

// Ziggurat with 256 layers of equal area kArea under exp(-x^2 / 2).
constexpr int kLayers = 256;
constexpr double kTailStart = 3.6541528853610088;
constexpr double kArea = 4.92867323399e-3;

struct ZigguratTables {
    std::array<double, kLayers + 1> x{};
    std::array<double, kLayers + 1> f{};

    ZigguratTables() {
        const auto density = [](double t) { return std::exp(-0.5 * t * t); };
        x[0] = kArea / density(kTailStart);
        x[1] = kTailStart;
        for (int i = 1; i < kLayers - 1; ++i) x[i + 1] = std::sqrt(-2.0 * std::log(kArea / x[i] + density(x[i])));
        x[kLayers] = 0.0;
        for (int i = 0; i <= kLayers; ++i) f[i] = density(x[i]);
    }
};

const ZigguratTables& ziggurat() {
    static const ZigguratTables tables;
    return tables;
}

} // namespace

double RandomStream::standard_normal() noexcept {
    const ZigguratTables& z = ziggurat();
    for (;;) {
        const std::uint64_t w = next_u64();
        const int i = static_cast<int>(w & 0xFF);
        // Signed 53-bit integer scaled to [-1, 1).
        const double u = static_cast<double>(static_cast<std::int64_t>(w) >> 11) * 0x1.0p-52;
        const double candidate = u * z.x[i];
        if (std::fabs(candidate) < z.x[i + 1]) return candidate;
        if (i == 0) {
            double a, b;
            do {
                a = -std::log(uniform()) / kTailStart;
                b = -std::log(uniform());
            } while (2.0 * b < a * a);
            return u < 0.0 ? -(kTailStart + a) : kTailStart + a;
        }
        if (z.f[i + 1] + uniform() * (z.f[i] - z.f[i + 1]) < std::exp(-0.5 * candidate * candidate)) return candidate;
    }
}

} // namespace causal_ssd
