#include "igac/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "igac/error.hpp"

namespace igac {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

void check_size(const FamilySpec& family, const Vector& v, int expected, const char* what) {
    if (v.size() != expected) {
        std::ostringstream msg;
        msg << family.label() << ": expected " << expected << ' ' << what << ", got " << v.size();
        throw Error(ErrorKind::shape, msg.str(), what);
    }
}

// Univariate log densities; the caller guarantees parameters are in-domain.
double log_exponential(double mu, double x) {
    if (x < 0.0) return -kInf;
    return -std::log(mu) - x / mu;
}

double log_wigner(double mu, double x) {
    if (x <= 0.0) return -kInf;
    return std::log(kPi * x / (2.0 * mu * mu)) - kPi * x * x / (4.0 * mu * mu);
}

double log_gaussian(double mu, double sigma, double x) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * kPi);
}

template <class Fn>
void for_each_factor(const FamilySpec& family, Fn&& fn) {
    int p = 0;
    int m = 0;
    for (const auto& factor : family.factors()) {
        fn(factor, p, m);
        p += factor.param_count();
        m += factor.micro_count();
    }
}

}  // namespace

std::string_view to_string(FamilyName name) {
    switch (name) {
        case FamilyName::exponential: return "exponential";
        case FamilyName::gaussian: return "gaussian";
        case FamilyName::wigner_dyson: return "wigner_dyson";
        case FamilyName::poisson_spacing: return "poisson_spacing";
        case FamilyName::composite_integrable: return "composite_integrable";
        case FamilyName::composite_chaotic: return "composite_chaotic";
        case FamilyName::product: return "product";
    }
    return "unknown";
}

FamilySpec FamilySpec::make(FamilyName name) {
    FamilySpec f;
    f.name_ = name;
    f.label_ = std::string(to_string(name));
    switch (name) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing:
            f.param_names_ = {"mu"};
            f.param_domain_ = {kPositive};
            f.micro_support_ = {kPositive};
            break;
        case FamilyName::wigner_dyson:
            f.param_names_ = {"mu"};
            f.param_domain_ = {kPositive};
            f.micro_support_ = {kPositive};
            break;
        case FamilyName::gaussian:
            f.param_names_ = {"mu", "sigma"};
            f.param_domain_ = {kRealLine, kPositive};
            f.micro_support_ = {kRealLine};
            break;
        case FamilyName::composite_integrable: {
            f = product({make(FamilyName::poisson_spacing), make(FamilyName::exponential)}, "composite_integrable");
            f.name_ = name;
            f.param_names_ = {"mu_A", "mu_B"};
            break;
        }
        case FamilyName::composite_chaotic: {
            f = product({make(FamilyName::wigner_dyson), make(FamilyName::gaussian)}, "composite_chaotic");
            f.name_ = name;
            f.param_names_ = {"mu_A", "mu_B", "sigma_B"};
            break;
        }
        case FamilyName::product:
            throw Error(ErrorKind::unsupported, "product families are built from factors");
    }
    return f;
}

FamilySpec FamilySpec::parse(std::string_view name) {
    for (auto candidate : {FamilyName::exponential, FamilyName::gaussian, FamilyName::wigner_dyson,
                           FamilyName::poisson_spacing, FamilyName::composite_integrable,
                           FamilyName::composite_chaotic}) {
        if (name == to_string(candidate)) return make(candidate);
    }
    throw Error(ErrorKind::unsupported, "unknown family '" + std::string(name) + "'", "family");
}

FamilySpec FamilySpec::product(std::vector<FamilySpec> factors, std::string label) {
    if (factors.empty()) throw Error(ErrorKind::validation, "product family needs at least one factor");
    FamilySpec f;
    f.name_ = FamilyName::product;
    f.label_ = std::move(label);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& factor = factors[i];
        if (factor.is_composite()) throw Error(ErrorKind::unsupported, "product factors must be univariate families");
        for (const auto& pn : factor.param_names()) f.param_names_.push_back(pn + "_" + std::to_string(i));
        f.param_domain_.insert(f.param_domain_.end(), factor.param_domain().begin(), factor.param_domain().end());
        f.micro_support_.insert(f.micro_support_.end(), factor.micro_support().begin(), factor.micro_support().end());
    }
    f.factors_ = std::move(factors);
    return f;
}

void FamilySpec::validate(const Vector& theta) const {
    check_size(*this, theta, param_count(), "parameters");
    for (int i = 0; i < param_count(); ++i) {
        const auto& dom = param_domain_[static_cast<std::size_t>(i)];
        if (!dom.contains(theta[i])) {
            std::ostringstream msg;
            msg << label_ << ": parameter " << param_names_[static_cast<std::size_t>(i)] << " = " << theta[i]
                << " outside (" << dom.lo << ", " << dom.hi << ")";
            throw Error(ErrorKind::domain, msg.str(), param_names_[static_cast<std::size_t>(i)]);
        }
    }
}

double log_density_unchecked(const FamilySpec& family, const double* theta, const double* x) {
    if (family.is_composite()) {
        double total = 0.0;
        for_each_factor(family, [&](const FamilySpec& factor, int p, int m) {
            total += log_density_unchecked(factor, theta + p, x + m);
        });
        return total;
    }
    switch (family.name()) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing: return log_exponential(theta[0], x[0]);
        case FamilyName::wigner_dyson: return log_wigner(theta[0], x[0]);
        case FamilyName::gaussian: return log_gaussian(theta[0], theta[1], x[0]);
        default: break;
    }
    throw Error(ErrorKind::unsupported, "no density for " + family.label());
}

double log_density(const FamilySpec& family, const ParamPoint& theta, const Vector& x) {
    family.validate(theta);
    check_size(family, x, family.micro_count(), "microvariables");
    return log_density_unchecked(family, theta.data(), x.data());
}

double density(const FamilySpec& family, const ParamPoint& theta, const Vector& x) {
    if (family.is_composite()) {
        family.validate(theta);
        check_size(family, x, family.micro_count(), "microvariables");
        double total = 1.0;
        for_each_factor(family, [&](const FamilySpec& factor, int p, int m) {
            total *= density(factor, theta.segment(p, factor.param_count()), x.segment(m, factor.micro_count()));
        });
        return total;
    }
    const double lp = log_density(family, theta, x);
    return std::isinf(lp) ? 0.0 : std::exp(lp);
}

double cdf(const FamilySpec& family, const ParamPoint& theta, double x) {
    family.validate(theta);
    switch (family.name()) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing: return x <= 0.0 ? 0.0 : -std::expm1(-x / theta[0]);
        case FamilyName::wigner_dyson: {
            if (x <= 0.0) return 0.0;
            const double r = x / theta[0];
            return -std::expm1(-kPi * r * r / 4.0);
        }
        case FamilyName::gaussian: return 0.5 * std::erfc(-(x - theta[0]) / (theta[1] * std::numbers::sqrt2));
        default: break;
    }
    throw Error(ErrorKind::unsupported, "cdf is defined for univariate families only", "family");
}

Moments moments(const FamilySpec& family, const ParamPoint& theta) {
    family.validate(theta);
    Moments out{Vector::Zero(family.micro_count()), Vector::Zero(family.micro_count())};
    if (family.is_composite()) {
        for_each_factor(family, [&](const FamilySpec& factor, int p, int m) {
            const auto sub = moments(factor, theta.segment(p, factor.param_count()));
            out.mean.segment(m, factor.micro_count()) = sub.mean;
            out.variance.segment(m, factor.micro_count()) = sub.variance;
        });
        return out;
    }
    switch (family.name()) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing:
            out.mean[0] = theta[0];
            out.variance[0] = theta[0] * theta[0];
            break;
        case FamilyName::wigner_dyson:
            out.mean[0] = theta[0];
            out.variance[0] = (4.0 / kPi - 1.0) * theta[0] * theta[0];
            break;
        case FamilyName::gaussian:
            out.mean[0] = theta[0];
            out.variance[0] = theta[1] * theta[1];
            break;
        default: throw Error(ErrorKind::unsupported, "no moments for " + family.label());
    }
    return out;
}

namespace {

double draw(const FamilySpec& family, const ParamPoint& theta, std::mt19937_64& rng) {
    const double u = open_uniform(rng);
    switch (family.name()) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing: return -theta[0] * std::log(u);
        case FamilyName::wigner_dyson: return 2.0 * theta[0] * std::sqrt(-std::log(u) / kPi);
        case FamilyName::gaussian: {
            const double v = open_uniform(rng);
            return theta[0] + theta[1] * std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
        }
        default: break;
    }
    throw Error(ErrorKind::unsupported, "no sampler for " + family.label());
}

}  // namespace

std::vector<Vector> sample(const FamilySpec& family, const ParamPoint& theta, std::size_t count,
                           std::uint64_t seed) {
    family.validate(theta);
    if (count == 0) throw Error(ErrorKind::validation, "sample count must be positive", "count");
    std::mt19937_64 rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        Vector x(family.micro_count());
        if (family.is_composite()) {
            for_each_factor(family, [&](const FamilySpec& factor, int p, int m) {
                x[m] = draw(factor, theta.segment(p, factor.param_count()), rng);
            });
        } else {
            x[0] = draw(family, theta, rng);
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace igac
