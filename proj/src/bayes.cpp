#include "causal_ssd/bayes.hpp"

#include <limits>
#include <string>

namespace causal_ssd {

void PairedSample::validate() const {
    if (x_u.size() != x_v.size()) throw DomainError("paired sample columns differ in length");
    if (x_u.size() < 2) throw DomainError("paired sample needs n >= 2 (got " + std::to_string(x_u.size()) + ")");
    if (!x_u.allFinite() || !x_v.allFinite()) throw DomainError("paired sample contains non-finite values");
    if (!(x_u.squaredNorm() > 0.0) || !(x_v.squaredNorm() > 0.0))
        throw DegenerateSampleError("sample column has zero sum of squares");
}

double log_g_of_n(double n) {
    if (!(n >= 2.0)) throw DomainError("g(n) requires n >= 2");
    return std::log(n) + log_gamma(0.5 * n) - 0.5 * std::log(std::numbers::pi) - log_gamma(0.5 * (n + 1.0));
}

double g_of_n(int n) { return std::exp(log_g_of_n(double(n))); }

double uncentered_correlation_sq(const PairedSample& s) {
    s.validate();
    return uncentered_correlation_sq(s.x_u, s.x_v);
}

double log_bf01_from_r2(double r2, int n) {
    if (!(r2 >= 0.0 && r2 <= 1.0)) throw DomainError("r^2 must lie in [0, 1]");
    const double lg = log_g_of_n(double(n));
    if (r2 >= 1.0) return -std::numeric_limits<double>::infinity();
    return lg + 0.5 * double(n - 1) * std::log1p(-r2);
}

double log_bf01(const PairedSample& s) {
    return log_bf01_from_r2(uncentered_correlation_sq(s), static_cast<int>(s.n()));
}

double bf01(const PairedSample& s) { return std::exp(log_bf01(s)); }

double log_bf01_subjective_scatter(const Eigen::Matrix2d& scatter, double n, double a, const Eigen::Matrix2d& rate_uv,
                                   int T) {
    if (T < 2) throw DomainError("the chain component must contain both u and v (T >= 2)");
    if (!(a > double(T - 1))) throw DomainError("subjective prior requires a > T - 1");
    const Eigen::Index rest = T - 1;
    const double m_u =
        log_marginal_likelihood(scatter.block<1, 1>(0, 0), rate_uv.block<1, 1>(0, 0), n, a, rest);
    const double m_v =
        log_marginal_likelihood(scatter.block<1, 1>(1, 1), rate_uv.block<1, 1>(1, 1), n, a, rest);
    const double m_uv = log_marginal_likelihood(scatter, rate_uv, n, a, T - 2);
    return m_u + m_v - m_uv;
}

namespace {

Eigen::Matrix2d pair_scatter(const PairedSample& s) {
    Eigen::Matrix<double, Eigen::Dynamic, 2> x(s.n(), 2);
    x.col(0) = s.x_u;
    x.col(1) = s.x_v;
    return x.transpose() * x;
}

} // namespace

double log_bf01_subjective(const PairedSample& s, double a, const Eigen::Matrix2d& rate_uv, int T) {
    if (s.x_u.size() != s.x_v.size()) throw DomainError("paired sample columns differ in length");
    return log_bf01_subjective_scatter(pair_scatter(s), double(s.n()), a, rate_uv, T);
}

double log_fbf_objective_bf(const PairedSample& s, const FbfConfig& cfg, int T) {
    s.validate();
    const double n = double(s.n());
    const double a_omega = cfg.resolved_a_omega(T);
    if (!(cfg.n0 > 0.0) || !(cfg.n0 < n)) throw DomainError("fractional Bayes factor requires 0 < n0 < n");
    if (!(a_omega + cfg.n0 > double(T - 1))) throw DomainError("fractional prior improper: a_omega + n0 <= T - 1");
    const Eigen::Matrix2d scatter = pair_scatter(s);
    const double b = cfg.n0 / n;
    return log_bf01_subjective_scatter((1.0 - b) * scatter, n - cfg.n0, a_omega + cfg.n0, b * scatter, T);
}

double fbf_objective_bf(const PairedSample& s, const FbfConfig& cfg, int T) {
    return std::exp(log_fbf_objective_bf(s, cfg, T));
}

} // namespace causal_ssd
