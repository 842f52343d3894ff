#include "causal_ssd/numerics.hpp"

#include <limits>
#include <numbers>

namespace causal_ssd {

namespace {

// Below this argument log_gamma shifts upward with the recurrence before
// applying the asymptotic series.
constexpr double kStirlingCutoff = 7.0;

double stirling_log_gamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number coefficients B_{2k} / (2k (2k-1)).
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 +
                                               inv2 * (-691.0 / 360360.0 + inv2 * (1.0 / 156.0)))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIterations = 200000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw DomainError("incomplete beta continued fraction did not converge");
}

void check_beta_args(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta: x must lie in [0, 1]");
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("incomplete beta: shape parameters must be positive and finite");
}

// Returns {lower, upper} = {I_x(a,b), 1 - I_x(a,b)} with the symmetry switch.
std::pair<double, double> incomplete_beta_pair(double x, double a, double b) {
    check_beta_args(x, a, b);
    if (x == 0.0) return {0.0, 1.0};
    if (x == 1.0) return {1.0, 0.0};
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double lower = front * beta_continued_fraction(x, a, b) / a;
        return {lower, 1.0 - lower};
    }
    const double upper = front * beta_continued_fraction(1.0 - x, b, a) / b;
    return {1.0 - upper, upper};
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma requires a finite positive argument");
    if (x >= kStirlingCutoff) return stirling_log_gamma(x);
    double product = 1.0;
    double shifted = x;
    while (shifted < kStirlingCutoff) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling_log_gamma(shifted) - std::log(product);
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double regularized_incomplete_beta(double x, double a, double b) {
    return incomplete_beta_pair(x, a, b).first;
}

double regularized_incomplete_beta_upper(double x, double a, double b) {
    return incomplete_beta_pair(x, a, b).second;
}

double sample_gaussian(RandomStream& stream, double mean, double sd) {
    if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean))
        throw DomainError("sample_gaussian requires a finite mean and sd > 0");
    return mean + sd * stream.standard_normal();
}

double sample_gamma(RandomStream& stream, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
        throw DomainError("sample_gamma requires positive finite shape and rate");
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a + 1) * U^{1/a}
        const double boost = std::pow(stream.uniform(), 1.0 / shape);
        return sample_gamma(stream, shape + 1.0, rate) * boost;
    }
    // Marsaglia & Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = stream.standard_normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform();
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2 || std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
            return d * v / rate;
    }
}

double sample_chi_square(RandomStream& stream, double dof) {
    if (!(dof > 0.0)) throw DomainError("chi-square degrees of freedom must be positive");
    return sample_gamma(stream, 0.5 * dof, 0.5);
}

double sample_beta(RandomStream& stream, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("sample_beta requires positive finite parameters");
    const double x = sample_gamma(stream, a);
    const double y = sample_gamma(stream, b);
    return x / (x + y);
}

} // namespace causal_ssd
