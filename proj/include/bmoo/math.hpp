#ifndef BMOO_MATH_HPP
#define BMOO_MATH_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmoo {

inline constexpr double kSqrt2 = 1.4142135623730950488016887242097;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

/// Standard normal density.
inline double normal_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

/// Standard normal cumulative distribution function.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

/// Closed-form kernel of the expected improvement family:
/// E[(z - sqrt(s) Z)+] for Z standard normal, i.e. the expected exceedance
/// of a N(0, s) variable below the threshold z.  Degenerates to max(z, 0)
/// for s = 0.  Its derivative in z is normal_cdf(z / sqrt(s)), which makes
/// it the antiderivative used for box integrals of the normal cdf.
inline double ei_kernel(double z, double s) {
    if (s <= 0.0) return std::max(z, 0.0);
    const double sd = std::sqrt(s);
    const double u = z / sd;
    return sd * normal_pdf(u) + z * normal_cdf(u);
}

/// Probability that a N(mean, sd^2) variable is <= t; exact indicator when
/// sd = 0 so that near-interpolating surrogates stay well behaved.
inline double prob_below(double mean, double sd, double t) {
    if (sd <= 0.0) return mean <= t ? 1.0 : 0.0;
    return normal_cdf((t - mean) / sd);
}

/// log of the standard normal cdf, stable far into the lower tail where the
/// plain cdf underflows.
inline double log_normal_cdf(double z) {
    if (z > -8.0) return std::log(normal_cdf(z));
    // asymptotic tail: phi(z)/(-z) * (1 - 1/z^2 + 3/z^4)
    const double z2 = z * z;
    return -0.5 * z2 - 0.91893853320467274178 - std::log(-z) +
           std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

inline double log_prob_below(double mean, double sd, double t) {
    if (sd <= 0.0) return mean <= t ? 0.0 : -std::numeric_limits<double>::infinity();
    return log_normal_cdf((t - mean) / sd);
}

/// log of ei_kernel, stable when the improvement threshold sits far below
/// the mean.
inline double log_ei_kernel(double z, double s) {
    if (s <= 0.0) {
        return z > 0.0 ? std::log(z) : -std::numeric_limits<double>::infinity();
    }
    const double sd = std::sqrt(s);
    const double u = z / sd;
    if (u > -8.0) return std::log(ei_kernel(z, s));
    // sqrt(s) * [phi(u) + u Phi(u)] ~ sqrt(s) phi(u)/u^2 * (1 - 3/u^2 + ...)
    const double u2 = u * u;
    return 0.5 * std::log(s) - 0.5 * u2 - 0.91893853320467274178 - std::log(u2) +
           std::log1p(-3.0 / u2 + 15.0 / (u2 * u2));
}

}  // namespace bmoo

#endif
