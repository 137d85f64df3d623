#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "igac/types.hpp"

namespace igac {

// Families housed by the library. `product` is an independent product of
// arbitrary factors; the two named composites are fixed products.
enum class FamilyName {
    exponential,
    gaussian,
    wigner_dyson,
    poisson_spacing,       // exponential law read as a level-spacing distribution
    composite_integrable,  // poisson_spacing x exponential bath
    composite_chaotic,     // wigner_dyson x gaussian bath
    product,
};

std::string_view to_string(FamilyName name);

// Immutable description of a parametric family. Composite families keep
// their factors; parameters and microvariables are concatenated in factor order.
class FamilySpec {
public:
    static FamilySpec make(FamilyName name);
    static FamilySpec parse(std::string_view name);  // throws Error(unsupported)
    static FamilySpec product(std::vector<FamilySpec> factors, std::string label = "product");

    FamilyName name() const { return name_; }
    const std::string& label() const { return label_; }
    bool is_composite() const { return !factors_.empty(); }
    const std::vector<FamilySpec>& factors() const { return factors_; }

    const std::vector<std::string>& param_names() const { return param_names_; }
    const std::vector<Interval>& param_domain() const { return param_domain_; }
    const std::vector<Interval>& micro_support() const { return micro_support_; }
    int param_count() const { return static_cast<int>(param_names_.size()); }
    int micro_count() const { return static_cast<int>(micro_support_.size()); }

    // Throws Error(domain) naming the first offending parameter.
    void validate(const Vector& theta) const;

private:
    FamilySpec() = default;

    FamilyName name_ = FamilyName::exponential;
    std::string label_;
    std::vector<FamilySpec> factors_;
    std::vector<std::string> param_names_;
    std::vector<Interval> param_domain_;
    std::vector<Interval> micro_support_;
};

// Macrostate coordinates, ordered as FamilySpec::param_names().
using ParamPoint = Vector;

double density(const FamilySpec& family, const ParamPoint& theta, const Vector& x);

// log density; -inf outside the support.
double log_density(const FamilySpec& family, const ParamPoint& theta, const Vector& x);

// log_density without parameter or shape checks, for inner quadrature loops.
double log_density_unchecked(const FamilySpec& family, const double* theta, const double* x);

// Univariate CDF; throws Error(unsupported) for composite families.
double cdf(const FamilySpec& family, const ParamPoint& theta, double x);

struct Moments {
    Vector mean;
    Vector variance;
};

Moments moments(const FamilySpec& family, const ParamPoint& theta);

// Deterministic draws from mt19937_64(seed); inverse CDF for the
// exponential and Wigner-Dyson laws, Box-Muller for the Gaussian. Each row is
// one microstate.
std::vector<Vector> sample(const FamilySpec& family, const ParamPoint& theta, std::size_t count,
                           std::uint64_t seed);

}  // namespace igac
