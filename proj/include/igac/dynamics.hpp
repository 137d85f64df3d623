#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "igac/geometry.hpp"
#include "igac/manifold.hpp"

namespace igac {

struct IntegrateOptions {
    double tol = 1e-10;          // mixed absolute/relative local error per step
    double max_step = 0.0;       // 0 selects tau_max / 1000
    double boundary_tol = 1e-9;  // distance to a finite domain edge that ends the run
    double fd_step = kDefaultFdStep;
    std::size_t max_steps = 10'000'000;
};

enum class Termination { completed, boundary };
const char* to_string(Termination t);

struct GeodesicTrajectory {
    std::string model_name;
    std::vector<double> tau;
    std::vector<Vector> coords;
    std::vector<Vector> velocity;
    std::vector<double> speed;  // g-norm of the velocity

    // Filled by integrate_jacobi: J, its covariant derivative DJ/dτ, and ||J||_g.
    std::vector<Vector> jacobi;
    std::vector<Vector> jacobi_rate;
    std::vector<double> jacobi_norm;

    Termination termination = Termination::completed;
    std::string boundary_coordinate;  // set when termination == boundary

    std::size_t size() const { return tau.size(); }
    int dim() const { return coords.empty() ? 0 : static_cast<int>(coords.front().size()); }
    bool has_jacobi() const { return !jacobi_norm.empty(); }
};

// d²Θ/dτ² + Γ(Θ)(Θ̇, Θ̇) = 0 with adaptive Dormand-Prince 5(4) steps. Every
// accepted step is recorded. Reaching within boundary_tol of a finite domain
// edge stops the run with Termination::boundary. Step underflow throws
// SingularityError with the last accepted state.
GeodesicTrajectory integrate_geodesic(const ManifoldModel& model, const Vector& theta0, const Vector& v0,
                                      double tau_max, const IntegrateOptions& options = {});

// Co-integrates the geodesic of `traj` with the Jacobi equation
//   D²J/dτ² + R(J, Θ̇)Θ̇ = 0
// written in coordinates with P = DJ/dτ:
//   dJ/dτ = P - Γ(Θ̇, J),   dP/dτ = -Γ(Θ̇, P) - R^ρ_σμν Θ̇^σ J^μ Θ̇^ν.
// `dJ0` is the initial covariant derivative. Output is sampled on traj.tau.
GeodesicTrajectory integrate_jacobi(const ManifoldModel& model, const GeodesicTrajectory& traj, const Vector& J0,
                                    const Vector& dJ0, const IntegrateOptions& options = {});

struct LyapunovEstimate {
    double lambda_j = 0.0;
    double r2 = 0.0;
    std::size_t samples = 0;
};

// Least-squares slope of log(||J(τ)|| / ||J(τ_w0)||) against τ over [w0, w1].
LyapunovEstimate estimate_lambda_j(const GeodesicTrajectory& traj, double w0, double w1);

}  // namespace igac
