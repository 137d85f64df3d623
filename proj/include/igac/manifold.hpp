#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "igac/families.hpp"
#include "igac/quadrature.hpp"
#include "igac/types.hpp"

namespace igac {

using MetricFn = std::function<Matrix(const Vector&)>;
using ChristoffelFn = std::function<Christoffel(const Vector&)>;
using RiemannFn = std::function<Riemann(const Vector&)>;
using DensityFactor = std::function<double(double)>;

// A coordinate domain with a metric field. Immutable once built; the optional
// closed forms serve as oracles for the finite-difference geometry path.
class ManifoldModel {
public:
    ManifoldModel(std::string name, std::vector<std::string> coord_names, std::vector<Interval> domain,
                  MetricFn metric);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(coord_names_.size()); }
    const std::vector<std::string>& coord_names() const { return coord_names_; }
    const std::vector<Interval>& domain() const { return domain_; }

    Matrix metric(const Vector& theta) const;  // validates shape and domain
    bool contains(const Vector& theta) const;
    void validate(const Vector& theta) const;  // throws Error(shape|domain)

    const std::optional<ChristoffelFn>& christoffel_override() const { return christoffel_; }
    const std::optional<RiemannFn>& riemann_override() const { return riemann_; }

    // Per-coordinate factors with sqrt(det g) = prod_i f_i(theta_i), when known.
    const std::optional<std::vector<DensityFactor>>& volume_factors() const { return volume_factors_; }

    ManifoldModel with_christoffel(ChristoffelFn fn) const;
    ManifoldModel with_riemann(RiemannFn fn) const;
    ManifoldModel with_volume_factors(std::vector<DensityFactor> factors) const;

    // Same metric, every closed-form override dropped.
    ManifoldModel generic() const;

private:
    std::string name_;
    std::vector<std::string> coord_names_;
    std::vector<Interval> domain_;
    MetricFn metric_;
    std::optional<ChristoffelFn> christoffel_;
    std::optional<RiemannFn> riemann_;
    std::optional<std::vector<DensityFactor>> volume_factors_;
};

// Fisher-Rao metric of a family from its registered closed form; composites
// are block diagonal over their factors.
Matrix fisher_metric_closed_form(const FamilySpec& family, const ParamPoint& theta);

struct QuadratureMetric {
    Matrix metric;
    double error_estimate = 0.0;  // Frobenius norm of the last refinement step
    int nodes = 0;                // nodes per microvariable in the accepted estimate
};

// ∫ p ∂_μ log p ∂_ν log p dX by tensor-product Gauss-Legendre with node
// doubling; parameter derivatives by central differences with
// h = 1e-5 max(1, |θ_i|). Throws AccuracyError if refinement never settles.
QuadratureMetric fisher_metric_quadrature(const FamilySpec& family, const ParamPoint& theta,
                                          const QuadSpec& spec = {});

// ∫ p dX over the support, refined like the metric quadrature.
double normalization(const FamilySpec& family, const ParamPoint& theta, const QuadSpec& spec = {});

// Statistical manifold of a family with closed-form metric, connection,
// curvature and volume factors.
ManifoldModel model_from_family(const FamilySpec& family, std::string name = {});

ManifoldModel integrable_model();  // (mu_A, mu_B), metric diag(1/mu_A², 1/mu_B²)
ManifoldModel chaotic_model();     // (mu_A, mu_B, sigma_B), diag(4/mu_A², 1/sigma_B², 2/sigma_B²)
ManifoldModel gaussian_model();    // (mu, sigma), diag(1/sigma², 2/sigma²)
ManifoldModel euclidean_model(int dim);

// Looks up integrable | chaotic | gaussian | euclidean2 | euclidean3.
ManifoldModel model_by_name(const std::string& name);

double line_element(const ManifoldModel& model, const Vector& theta, const Vector& dtheta);

}  // namespace igac
