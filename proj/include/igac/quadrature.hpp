#pragma once

#include <functional>
#include <vector>

#include "igac/types.hpp"

namespace igac {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule, Newton iteration on P_n. Cached per n.
const GaussLegendreRule& gauss_legendre(int n);

// Quadrature settings for integrals over a microvariable support.
struct QuadSpec {
    int nodes = 64;        // starting nodes per dimension
    int max_nodes = 2048;  // refinement stops here with an AccuracyError
    double tol = 1e-8;     // successive-estimate agreement required
};

// Maps the open unit cube onto a (possibly infinite) support:
//   (0, inf)     x = a + s * t/(1-t),      t in (0, 1)
//   (-inf, inf)  x = c + s * t/(1-t^2),    t in (-1, 1)
//   (a, b)       affine
// `center` and `scale` place the bulk of the integrand near t ~ 0.5 / t ~ 0.
struct MappedAxis {
    Interval support;
    double center = 0.0;
    double scale = 1.0;

    // Fills x and dx/dt-weighted quadrature weights for an n-point rule.
    void nodes(int n, std::vector<double>& x, std::vector<double>& w) const;
};

// Tensor-product integral of f over the product of mapped axes.
double integrate_product(const std::vector<MappedAxis>& axes, int n,
                         const std::function<double(const std::vector<double>&)>& f);

// Vector-valued variant: f writes `width` values into its output span.
std::vector<double> integrate_product(const std::vector<MappedAxis>& axes, int n, int width,
                                      const std::function<void(const std::vector<double>&, double*)>& f);

// ∫_a^b f(x) dx with an n-point rule; integrates in log x when 0 < a and b/a is large.
double integrate_interval(double a, double b, int n, const std::function<double(double)>& f);

}  // namespace igac
