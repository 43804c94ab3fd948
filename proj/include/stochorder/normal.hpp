#pragma once

namespace stochorder::normal {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

double pdf(double z);

// Phi(z) = erfc(-z / sqrt 2) / 2; erfc keeps the lower tail accurate.
double cdf(double z);

// Inverse of cdf on (0,1) by bisection run to floating-point resolution.
// Symmetric by construction: quantile(t) == -quantile(1 - t).
double quantile(double t);

// E[Z | Z <= x] for standard normal Z (negative Mills-ratio form).
double lower_tail_mean(double x);

// E[Z | Z >= x].
double upper_tail_mean(double x);

}  // namespace stochorder::normal
