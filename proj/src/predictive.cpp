#include "causal_ssd/predictive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "causal_ssd/bayes.hpp"
#include "causal_ssd/errors.hpp"
#include "causal_ssd/numerics.hpp"
#include "parallel.hpp"

namespace causal_ssd {

const char* to_string(Hypothesis h) {
    return h == Hypothesis::H0 ? "H0" : "H1";
}

Eigen::Index DesignPosterior::column(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw DomainError("design posterior has no column '" + label + "'");
    return static_cast<Eigen::Index>(it - labels.begin());
}

DesignPosterior build_design_posterior(const Eigen::MatrixXd& z, std::optional<double> a_omega,
                                       std::vector<std::string> labels) {
    const Eigen::Index t = z.cols();
    if (z.rows() < 1) throw InsufficientDataError("observational data needs at least one row");
    if (t < 1) throw InsufficientDataError("observational data needs at least one column");
    if (!z.allFinite()) throw InsufficientDataError("observational data contains non-finite values");
    if (labels.empty()) {
        for (Eigen::Index j = 0; j < t; ++j) labels.push_back(std::to_string(j));
    }
    if (static_cast<Eigen::Index>(labels.size()) != t)
        throw DomainError("label count does not match the data columns");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
        throw DomainError("design posterior labels must be distinct");

    DesignPosterior post;
    post.a_omega = a_omega ? *a_omega : double(t - 1);
    post.observations = z.rows();
    post.df = post.a_omega + double(z.rows());
    post.scatter = z.transpose() * z;
    post.labels = std::move(labels);
    if (!(post.conditional_df() > 1.0))
        throw InsufficientDataError("design posterior is improper: a_omega + N - (T - 2) must exceed 1 (got " +
                                    std::to_string(post.conditional_df()) + ")");
    Eigen::LLT<Eigen::MatrixXd> llt(post.scatter);
    if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0.0))
        throw InsufficientDataError("observational scatter matrix is singular");
    return post;
}

void InterventionDensity::validate() const {
    if (!std::isfinite(mean)) throw DomainError("intervention mean must be finite");
    if (!(sd > 0.0) || !std::isfinite(sd)) throw DomainError("intervention sd must be positive and finite");
}

CholeskyPair derive_cholesky_pair(const Eigen::Matrix2d& sigma) {
    const double suu = sigma(0, 0);
    const double suv = 0.5 * (sigma(0, 1) + sigma(1, 0));
    const double svv = sigma(1, 1);
    if (!(suu > 0.0) || !sigma.allFinite()) throw DomainError("covariance is not positive definite");
    const double d = svv - suv * suv / suu;
    if (!(d > 0.0)) throw DomainError("covariance is not positive definite");
    return {-suv / suu, d};
}

double BfPredictiveSample::bf(std::size_t i) const {
    return std::exp(log_bf.at(i));
}

double BfPredictiveSample::fraction_at_most(double c) const {
    if (log_bf.empty()) return 0.0;
    if (!(c > 0.0)) return 0.0;
    const double lc = std::log(c);
    const auto hits = std::count_if(log_bf.begin(), log_bf.end(), [lc](double x) { return x <= lc; });
    return double(hits) / double(log_bf.size());
}

double BfPredictiveSample::fraction_at_least(double c) const {
    if (log_bf.empty()) return 0.0;
    if (!(c > 0.0)) return 1.0;
    const double lc = std::log(c);
    const auto hits = std::count_if(log_bf.begin(), log_bf.end(), [lc](double x) { return x >= lc; });
    return double(hits) / double(log_bf.size());
}

double BfPredictiveSample::fraction_between(double lo, double hi) const {
    if (log_bf.empty()) return 0.0;
    const double llo = lo > 0.0 ? std::log(lo) : -std::numeric_limits<double>::infinity();
    const double lhi = hi > 0.0 ? std::log(hi) : -std::numeric_limits<double>::infinity();
    const auto hits =
        std::count_if(log_bf.begin(), log_bf.end(), [&](double x) { return x > llo && x < lhi; });
    return double(hits) / double(log_bf.size());
}

namespace {

void check_n(int n) {
    if (n < 2) throw DomainError("interventional sample size must be at least 2");
}

// Pr(b > t) for b ~ Beta((n-1)/2, 1/2), with t from BF > c.
double upper_tail_h0(double c, int n) {
    if (!(c > 0.0)) return 1.0;
    if (std::isinf(c)) return 0.0;
    const double half = 0.5 * double(n - 1);
    const double log_t = (std::log(c) - log_g_of_n(double(n))) / half;
    if (log_t >= 0.0) return 0.0;
    return regularized_incomplete_beta_upper(std::exp(log_t), half, 0.5);
}

BfPredictiveSample make_sample(Hypothesis h, int n, const McConfig& mc, const RandomStream& stream) {
    if (mc.draws == 0) throw DomainError("Monte Carlo draw count must be positive");
    if (mc.block_size == 0) throw DomainError("Monte Carlo block size must be positive");
    BfPredictiveSample out;
    out.hypothesis = h;
    out.n = n;
    out.seed = stream.seed();
    out.path = stream.path();
    out.log_bf.assign(mc.draws, 0.0);
    return out;
}

// Fills out.log_bf block by block; block b uses stream.substream(b).
template <typename Draw>
void fill_blocks(BfPredictiveSample& out, const McConfig& mc, const RandomStream& stream, Draw&& draw) {
    const std::size_t blocks = (mc.draws + mc.block_size - 1) / mc.block_size;
    detail::for_each_index(blocks, mc.workers, [&](std::size_t b) {
        RandomStream rs = stream.substream(static_cast<std::uint64_t>(b));
        const std::size_t end = std::min(mc.draws, (b + 1) * mc.block_size);
        for (std::size_t i = b * mc.block_size; i < end; ++i) out.log_bf[i] = draw(rs);
    });
}

} // namespace

double prob_bf_above_h0(double c, int n) {
    check_n(n);
    return upper_tail_h0(c, n);
}

double prob_bf_band_h0(double lo, double hi, int n) {
    check_n(n);
    if (!(lo < hi)) throw DomainError("band requires lo < hi");
    return std::clamp(upper_tail_h0(lo, n) - upper_tail_h0(hi, n), 0.0, 1.0);
}

BfPredictiveSample sample_bf_h0(int n, const McConfig& mc, const RandomStream& stream) {
    check_n(n);
    BfPredictiveSample out = make_sample(Hypothesis::H0, n, mc, stream);
    const double half = 0.5 * double(n - 1);
    const double log_g = log_g_of_n(double(n));
    fill_blocks(out, mc, stream, [&](RandomStream& rs) { return log_g + half * std::log(sample_beta(rs, half, 0.5)); });
    return out;
}

BfPredictiveSample sample_bf_h1(const DesignPosterior& posterior, Eigen::Index u, Eigen::Index v,
                                const InterventionDensity& f_u, int n, const McConfig& mc,
                                const RandomStream& stream) {
    check_n(n);
    f_u.validate();
    const Eigen::Index t = posterior.dim();
    if (u < 0 || v < 0 || u >= t || v >= t) throw DomainError("edge endpoint outside the design posterior");
    if (u == v) throw DomainError("edge endpoints must differ");

    // Conditional precision of (u, v): W_2(df - (T - 2), S_{uv,uv}), rate convention.
    WishartParams<double> params;
    params.df = posterior.conditional_df();
    params.rate.resize(2, 2);
    params.rate << posterior.scatter(u, u), posterior.scatter(u, v), posterior.scatter(v, u), posterior.scatter(v, v);
    const WishartSampler<double> wishart(params);

    BfPredictiveSample out = make_sample(Hypothesis::H1, n, mc, stream);
    fill_blocks(out, mc, stream, [&](RandomStream& rs) {
        const Eigen::Matrix2d q = wishart(rs);
        const CholeskyPair pair = derive_cholesky_pair(q.inverse());
        const double slope = pair.slope();
        const double noise_sd = std::sqrt(pair.d_vv);
        double suu = 0.0, svv = 0.0, suv = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xu = f_u.mean + f_u.sd * rs.standard_normal();
            const double xv = slope * xu + noise_sd * rs.standard_normal();
            suu += xu * xu;
            svv += xv * xv;
            suv += xu * xv;
        }
        const double r2 = std::min(1.0, (suv * suv) / (suu * svv));
        return log_bf01_from_r2(r2, n);
    });
    return out;
}

BfPredictiveSample sample_bf_h1(const DesignPosterior& posterior, const std::string& u, const std::string& v,
                                const InterventionDensity& f_u, int n, const McConfig& mc,
                                const RandomStream& stream) {
    return sample_bf_h1(posterior, posterior.column(u), posterior.column(v), f_u, n, mc, stream);
}

void write_predictive_csv(std::ostream& out, std::span<const BfPredictiveSample> samples) {
    out << "hypothesis,n,draw_index,bf\n";
    char buf[64];
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < s.log_bf.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", std::exp(s.log_bf[i]));
            out << to_string(s.hypothesis) << ',' << s.n << ',' << i << ',' << buf << '\n';
        }
    }
}

} // namespace causal_ssd
