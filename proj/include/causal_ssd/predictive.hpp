#ifndef CAUSAL_SSD_PREDICTIVE_HPP
#define CAUSAL_SSD_PREDICTIVE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "causal_ssd/random.hpp"

namespace causal_ssd {

enum class Hypothesis { H0, H1 };

const char* to_string(Hypothesis h);

/**
 * Posterior of the unconstrained precision given observational data Z under the
 * default prior |Omega|^{(a_omega - T - 1)/2}: Omega | Z ~ W_T(a_omega + N, Z^T Z)
 * in the rate convention (mean df * scatter^{-1}).
 */
struct DesignPosterior {
    double df = 0.0;
    double a_omega = 0.0;
    Eigen::Index observations = 0;
    Eigen::MatrixXd scatter;
    std::vector<std::string> labels;

    Eigen::Index dim() const { return scatter.rows(); }
    Eigen::Index column(const std::string& label) const;
    // Degrees of freedom of the 2 x 2 conditional precision of any pair.
    double conditional_df() const { return df - double(dim() - 2); }
};

// a_omega defaults to T - 1. Labels default to "0", "1", ...
DesignPosterior build_design_posterior(const Eigen::MatrixXd& z, std::optional<double> a_omega = {},
                                       std::vector<std::string> labels = {});

/// Normal density used to set the intervened variable.
struct InterventionDensity {
    double mean = 0.0;
    double sd = 1.0;

    void validate() const;
};

/// Node-wise Cholesky parameters of v given its single parent u.
struct CholeskyPair {
    double l_uv = 0.0;  // -Sigma_uv / Sigma_uu
    double d_vv = 1.0;  // Sigma_{v|u}

    // Mean of X_v given X_u = x is slope() * x.
    double slope() const { return -l_uv; }
};

CholeskyPair derive_cholesky_pair(const Eigen::Matrix2d& sigma);

struct McConfig {
    std::size_t draws = 10000;
    unsigned workers = 1;
    // Draws per substream; part of the reproducibility contract.
    std::size_t block_size = 1000;
};

/// Predictive Bayes-factor draws under one hypothesis at one sample size.
/// Values are stored as natural-log Bayes factors.
struct BfPredictiveSample {
    Hypothesis hypothesis = Hypothesis::H0;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> path;
    std::vector<double> log_bf;

    std::size_t draws() const noexcept { return log_bf.size(); }
    double bf(std::size_t i) const;

    // Empirical Pr(BF <= c), Pr(BF >= c) and Pr(lo < BF < hi).
    double fraction_at_most(double c) const;
    double fraction_at_least(double c) const;
    double fraction_between(double lo, double hi) const;
};

// Pr(BF > c | H0) exactly; 1 for c <= 0.
double prob_bf_above_h0(double c, int n);

// Pr(lo < BF < hi | H0) exactly through the incomplete beta function; `hi` may be +inf.
double prob_bf_band_h0(double lo, double hi, int n);

// H0 predictive: BF = g(n) b^{(n-1)/2}, b ~ Beta((n-1)/2, 1/2).
BfPredictiveSample sample_bf_h0(int n, const McConfig& mc, const RandomStream& stream);

// H1 predictive by simulation from the design posterior after intervening on u.
BfPredictiveSample sample_bf_h1(const DesignPosterior& posterior, Eigen::Index u, Eigen::Index v,
                                const InterventionDensity& f_u, int n, const McConfig& mc,
                                const RandomStream& stream);

BfPredictiveSample sample_bf_h1(const DesignPosterior& posterior, const std::string& u, const std::string& v,
                                const InterventionDensity& f_u, int n, const McConfig& mc,
                                const RandomStream& stream);

// CSV with header `hypothesis,n,draw_index,bf`.
void write_predictive_csv(std::ostream& out, std::span<const BfPredictiveSample> samples);

} // namespace causal_ssd

#endif // CAUSAL_SSD_PREDICTIVE_HPP
