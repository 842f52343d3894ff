#ifndef CAUSAL_SSD_CONFIG_HPP
#define CAUSAL_SSD_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "causal_ssd/predictive.hpp"
#include "causal_ssd/ssd.hpp"

namespace causal_ssd {

inline constexpr std::uint64_t kDefaultSeed = 20221;

/// Settings shared by every command; echoed into each output artifact.
struct RunConfig {
    double k0 = 6.0;
    double k1 = 6.0;
    double zeta = 0.8;
    std::optional<double> a_omega;  // T - 1 per component when unset
    double n0 = 1.0;
    int n_max = 1000;
    std::size_t draws = 10000;
    std::uint64_t seed = kDefaultSeed;
    double intervention_mean = 0.0;
    double intervention_sd = 1.0;
    unsigned workers = 1;
    std::string graph;
    std::string data;
    std::string out;
    std::optional<std::pair<std::string, std::string>> edge;
    std::optional<int> n;

    DceThresholds thresholds() const { return {k0, k1, zeta}; }
    InterventionDensity intervention() const { return {intervention_mean, intervention_sd}; }
    McConfig mc() const {
        McConfig m;
        m.draws = draws;
        m.workers = workers;
        return m;
    }
    SsdConfig ssd() const { return {thresholds(), n_max, mc(), intervention(), a_omega}; }
};

} // namespace causal_ssd

#endif // CAUSAL_SSD_CONFIG_HPP
