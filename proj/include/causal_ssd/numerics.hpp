#ifndef CAUSAL_SSD_NUMERICS_HPP
#define CAUSAL_SSD_NUMERICS_HPP

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "causal_ssd/errors.hpp"
#include "causal_ssd/random.hpp"

namespace causal_ssd {

/// Natural log of the gamma function for finite x > 0.
double log_gamma(double x);

/// log B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), evaluated by continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

/// 1 - I_x(a, b), computed without cancellation.
double regularized_incomplete_beta_upper(double x, double a, double b);

double sample_gaussian(RandomStream& stream, double mean, double sd);

/// Gamma(shape, rate); mean shape / rate.
double sample_gamma(RandomStream& stream, double shape, double rate = 1.0);

double sample_chi_square(RandomStream& stream, double dof);

double sample_beta(RandomStream& stream, double a, double b);

/**
 * Wishart law in the rate parameterization: a draw W ~ W_T(df, rate) has
 * E[W] = df * rate^{-1}. Many references use the scale convention
 * (E[W] = df * scale); here scale = rate^{-1}.
 */
template <typename Scalar = double>
struct WishartParams {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Scalar df{};
    Matrix rate;

    Eigen::Index dim() const { return rate.rows(); }

    // Throws DomainError unless df > T - 1 and rate is symmetric positive definite.
    void validate() const {
        const Eigen::Index t = rate.rows();
        if (t == 0 || rate.cols() != t) throw DomainError("Wishart rate must be a non-empty square matrix");
        if (!(df > Scalar(t - 1)) || !std::isfinite(static_cast<double>(df)))
            throw DomainError("Wishart degrees of freedom must exceed T - 1 (got df=" +
                              std::to_string(static_cast<double>(df)) + ", T=" + std::to_string(t) + ")");
        const Scalar asym = (rate - rate.transpose()).cwiseAbs().maxCoeff();
        if (asym > Scalar(1e-10) * (Scalar(1) + rate.cwiseAbs().maxCoeff()))
            throw DomainError("Wishart rate matrix is not symmetric");
        Eigen::LLT<Matrix> llt(rate);
        if (llt.info() != Eigen::Success) throw DomainError("Wishart rate matrix is not positive definite");
    }
};

/**
 * Draws from W_T(df, rate) by the Bartlett construction: with L the Cholesky
 * factor of rate^{-1} and A lower triangular holding sqrt(chi2(df - i)) on the
 * diagonal (i = 0..T-1) and standard normals below it, W = L A A^T L^T.
 * The factor of rate^{-1} is computed once at construction.
 */
template <typename Scalar = double>
class WishartSampler {
public:
    using Matrix = typename WishartParams<Scalar>::Matrix;

    explicit WishartSampler(const WishartParams<Scalar>& params) : df_(params.df) {
        params.validate();
        const Eigen::Index t = params.dim();
        const Matrix scale = params.rate.llt().solve(Matrix::Identity(t, t));
        chol_ = Eigen::LLT<Matrix>(Scalar(0.5) * (scale + scale.transpose())).matrixL();
    }

    Eigen::Index dim() const { return chol_.rows(); }

    Matrix operator()(RandomStream& stream) const {
        const Eigen::Index t = dim();
        Matrix bartlett = Matrix::Zero(t, t);
        for (Eigen::Index i = 0; i < t; ++i) {
            bartlett(i, i) = Scalar(std::sqrt(sample_chi_square(stream, static_cast<double>(df_) - double(i))));
            for (Eigen::Index j = 0; j < i; ++j) bartlett(i, j) = Scalar(stream.standard_normal());
        }
        const Matrix factor = chol_ * bartlett;
        return factor * factor.transpose();
    }

private:
    Scalar df_;
    Matrix chol_;
};

template <typename Scalar>
typename WishartParams<Scalar>::Matrix sample_wishart(RandomStream& stream, const WishartParams<Scalar>& params) {
    return WishartSampler<Scalar>(params)(stream);
}

} // namespace causal_ssd

#endif // CAUSAL_SSD_NUMERICS_HPP
