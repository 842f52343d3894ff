#ifndef CAUSAL_SSD_HARNESS_HPP
#define CAUSAL_SSD_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causal_ssd/dataset.hpp"
#include "causal_ssd/graph.hpp"
#include "causal_ssd/predictive.hpp"
#include "causal_ssd/random.hpp"
#include "causal_ssd/ssd.hpp"

namespace causal_ssd {

/// Linear Gaussian SEM: X_j = sum_{i in pa(j)} b_ij X_i + sd_j eps_j.
struct LinearSemSpec {
    Dag dag;
    std::map<NodePair, double> coefficients;  // (parent, child) -> b
    std::vector<double> noise_sd;             // per node id

    void validate() const;
};

DatasetMatrix generate_sem_data(const LinearSemSpec& spec, Eigen::Index n_rows, RandomStream& stream);

struct CsvOptions {
    // Labels that must appear in the header; all missing ones are listed in the error.
    std::vector<std::string> required_labels;
    char delimiter = ',';
};

DatasetMatrix parse_csv(std::string_view text, const CsvOptions& options = {});
DatasetMatrix ingest_csv(const std::filesystem::path& path, const CsvOptions& options = {});

struct TwoNodeStudyConfig {
    Eigen::Index observations = 50;
    double beta = 0.5;
    double noise_sd = 1.0;
    std::optional<double> a_omega;  // T - 1 = 1 when unset
    InterventionDensity f_u;
    McConfig mc;
    int n_max = 1000;
    std::vector<double> k_values{3.0, 6.0, 10.0};
    std::vector<int> predictive_n{10, 50};
    std::vector<int> table_n{10, 50, 100};
    std::vector<double> zeta_grid{0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
};

/// Moderate and strong-to-extreme evidence for the true hypothesis at one n.
struct EvidenceRow {
    Hypothesis truth = Hypothesis::H0;
    int n = 0;
    double moderate = 0.0;  // H0: 3 < BF < 10; H1: 1/10 < BF < 1/3
    double strong = 0.0;    // H0: BF > 10;      H1: BF < 1/10
    std::optional<double> moderate_mc;  // H0 only: Monte Carlo counterpart of the exact value
    std::optional<double> strong_mc;
    double draws = 0.0;
};

struct CurvePoint {
    double k = 0.0;
    DceProbabilities dce;
};

struct OptimalNPoint {
    double k = 0.0;
    double zeta = 0.0;
    std::optional<int> n_star;
};

struct TwoNodeReport {
    TwoNodeStudyConfig config;
    std::uint64_t seed = 0;
    DatasetMatrix observational;
    DesignPosterior posterior;
    double p_h0 = 0.5;
    std::vector<BfPredictiveSample> predictive;  // H0 and H1 for each predictive_n
    std::vector<EvidenceRow> table;
    std::vector<CurvePoint> curves;  // k-major, n ascending
    std::vector<OptimalNPoint> optimal_n;
    std::vector<std::string> notes;
};

/**
 * Two-node study u -> v with X_v = beta X_u + eps. Stream layout under the
 * master stream: {0} observational data, {1, n} H1 draws at n (the same path
 * optimal_n_edge uses with edge stream {1}), {2, n} H0 Monte Carlo draws.
 */
TwoNodeReport replicate_two_node_study(const TwoNodeStudyConfig& config, const RandomStream& stream);

} // namespace causal_ssd

#endif // CAUSAL_SSD_HARNESS_HPP
