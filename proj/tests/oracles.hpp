#pragma once

// Test-side reference computations, written independently of the library.

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double exponential_pdf(double mu, double x) { return x < 0 ? 0.0 : std::exp(-x / mu) / mu; }
inline double exponential_cdf(double mu, double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x / mu); }

inline double wigner_pdf(double mu, double x) {
    return x < 0 ? 0.0 : kPi * x / (2 * mu * mu) * std::exp(-kPi * x * x / (4 * mu * mu));
}
inline double wigner_cdf(double mu, double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-kPi * x * x / (4 * mu * mu)); }

inline double gaussian_pdf(double mu, double sigma, double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * kPi));
}
inline double gaussian_cdf(double mu, double sigma, double x) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

}  // namespace oracle
