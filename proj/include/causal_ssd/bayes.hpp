#ifndef CAUSAL_SSD_BAYES_HPP
#define CAUSAL_SSD_BAYES_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "causal_ssd/errors.hpp"
#include "causal_ssd/numerics.hpp"

namespace causal_ssd {

/// Fractional Bayes factor settings: default prior degrees a_omega (T - 1 when
/// unset) and training sample size n0.
struct FbfConfig {
    std::optional<double> a_omega;
    double n0 = 1.0;

    double resolved_a_omega(int T) const { return a_omega ? *a_omega : double(T - 1); }
};

/// Interventional pair (x_u, x_v) of equal length n >= 2.
struct PairedSample {
    Eigen::VectorXd x_u;
    Eigen::VectorXd x_v;

    Eigen::Index n() const { return x_u.size(); }
    void validate() const;
};

/// log g(n), g(n) = n Gamma(n/2) / (sqrt(pi) Gamma((n+1)/2)). Real n >= 2.
double log_g_of_n(double n);
double g_of_n(int n);

/// (sum x_u x_v)^2 / (sum x_u^2 sum x_v^2), no centring.
template <typename DerivedU, typename DerivedV>
double uncentered_correlation_sq(const Eigen::MatrixBase<DerivedU>& x_u, const Eigen::MatrixBase<DerivedV>& x_v) {
    if (x_u.size() != x_v.size()) throw DomainError("paired sample columns differ in length");
    const double suu = x_u.squaredNorm();
    const double svv = x_v.squaredNorm();
    if (!(suu > 0.0) || !(svv > 0.0)) throw DegenerateSampleError("sample column has zero sum of squares");
    const double suv = x_u.dot(x_v);
    return std::min(1.0, (suv * suv) / (suu * svv));
}

double uncentered_correlation_sq(const PairedSample& s);

/// log of g(n) (1 - r^2)^{(n-1)/2}; -inf when r^2 == 1.
double log_bf01_from_r2(double r2, int n);

/// Closed-form objective Bayes factor of u <- v against u -> v after intervening on u.
double log_bf01(const PairedSample& s);
double bf01(const PairedSample& s);

namespace detail {

template <typename Derived>
double log_det_spd(const Eigen::MatrixBase<Derived>& m) {
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::LLT<Matrix> llt(m.eval());
    if (llt.info() != Eigen::Success) throw DomainError("matrix is not positive definite (singular U + S block)");
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

} // namespace detail

/**
 * Log marginal density of n zero-mean Gaussian rows restricted to a variable
 * subset A, when the full T x T precision has a W_T(a, U) prior (mean a U^{-1}).
 * `scatter` and `rate` are the A x A blocks S_AA and U_AA; `complement` is
 * |T \ A|. `n` may be fractional (fractional Bayes factor training splits).
 * The pi^{-n|A|/2} normalising constant is included.
 */
template <typename DerivedS, typename DerivedU>
double log_marginal_likelihood(const Eigen::MatrixBase<DerivedS>& scatter, const Eigen::MatrixBase<DerivedU>& rate,
                               double n, double a, Eigen::Index complement) {
    const Eigen::Index dim = rate.rows();
    if (scatter.rows() != dim || scatter.cols() != dim || rate.cols() != dim)
        throw DomainError("scatter and rate blocks must be square and of equal size");
    const double shifted = a - double(complement);
    if (!(shifted > double(dim - 1))) throw DomainError("marginal likelihood requires a > T - 1");
    if (n < 0.0) throw DomainError("sample size must be non-negative");
    double value = -0.5 * n * double(dim) * std::log(std::numbers::pi);
    for (Eigen::Index j = 1; j <= dim; ++j)
        value += log_gamma(0.5 * (shifted + n + 1.0 - double(j))) - log_gamma(0.5 * (shifted + 1.0 - double(j)));
    value += 0.5 * shifted * detail::log_det_spd(rate);
    value -= 0.5 * (shifted + n) * detail::log_det_spd(rate + scatter);
    return value;
}

/// log m(X_A) for an n x T data matrix and a T x T Wishart prior.
template <typename Derived>
double log_marginal_likelihood_subset(const Eigen::MatrixBase<Derived>& data, std::span<const Eigen::Index> subset,
                                      const WishartParams<double>& prior) {
    prior.validate();
    const Eigen::Index t = prior.dim();
    if (data.cols() != t) throw DomainError("data columns must match the prior dimension");
    if (subset.empty()) throw DomainError("variable subset must be non-empty");
    const std::vector<Eigen::Index> idx(subset.begin(), subset.end());
    for (auto i : idx)
        if (i < 0 || i >= t) throw DomainError("variable subset index out of range");
    const Eigen::MatrixXd cols = data(Eigen::all, idx);
    const Eigen::MatrixXd scatter = cols.transpose() * cols;
    const Eigen::MatrixXd rate = prior.rate(idx, idx);
    return log_marginal_likelihood(scatter, rate, double(data.rows()), prior.df,
                                   t - static_cast<Eigen::Index>(idx.size()));
}

/// Subjective Bayes factor m(X_u) m(X_v) / m(X_u, X_v) from 2 x 2 scatter and
/// rate blocks of a T-dimensional W_T(a, U) prior.
double log_bf01_subjective_scatter(const Eigen::Matrix2d& scatter, double n, double a, const Eigen::Matrix2d& rate_uv,
                                   int T);

double log_bf01_subjective(const PairedSample& s, double a, const Eigen::Matrix2d& rate_uv, int T);

/// Fractional Bayes factor: the subjective factor with a -> a_omega + n0,
/// n -> n - n0, U -> (n0/n) S and S -> ((n - n0)/n) S.
double log_fbf_objective_bf(const PairedSample& s, const FbfConfig& cfg, int T);
double fbf_objective_bf(const PairedSample& s, const FbfConfig& cfg, int T);

} // namespace causal_ssd

#endif // CAUSAL_SSD_BAYES_HPP
