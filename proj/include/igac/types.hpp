#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace igac {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double x) const { return x > lo && x < hi; }
    bool bounded_below() const { return std::isfinite(lo); }
    bool bounded_above() const { return std::isfinite(hi); }
};

inline constexpr Interval kRealLine{};
inline constexpr Interval kPositive{0.0, kInf};

// Connection coefficients Γ^ρ_μν, stored densely as dim³ values.
class Christoffel {
public:
    explicit Christoffel(int dim = 0) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

    int dim() const { return dim_; }
    double& operator()(int rho, int mu, int nu) { return data_[index(rho, mu, nu)]; }
    double operator()(int rho, int mu, int nu) const { return data_[index(rho, mu, nu)]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t index(int rho, int mu, int nu) const {
        return static_cast<std::size_t>((rho * dim_ + mu) * dim_ + nu);
    }

    int dim_;
    std::vector<double> data_;
};

// Riemann tensor R^ρ_σμν with R(∂_μ, ∂_ν)∂_σ = R^ρ_σμν ∂_ρ.
class Riemann {
public:
    explicit Riemann(int dim = 0) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}

    int dim() const { return dim_; }
    double& operator()(int rho, int sigma, int mu, int nu) { return data_[index(rho, sigma, mu, nu)]; }
    double operator()(int rho, int sigma, int mu, int nu) const { return data_[index(rho, sigma, mu, nu)]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t index(int rho, int sigma, int mu, int nu) const {
        return static_cast<std::size_t>(((rho * dim_ + sigma) * dim_ + mu) * dim_ + nu);
    }

    int dim_;
    std::vector<double> data_;
};

}  // namespace igac
