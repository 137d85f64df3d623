#pragma once

#include <cstddef>
#include <vector>

#include "igac/manifold.hpp"
#include "igac/types.hpp"

namespace igac {

// Finite-difference step for coordinate i is fd_step * max(1, |θ_i|).
inline constexpr double kDefaultFdStep = 1e-4;

Vector fd_steps(const Vector& theta, double fd_step);

// Inverse metric; throws Error(inversion) unless g is positive definite.
Matrix inverse_metric(const Matrix& g);

// Γ^ρ_μν; the model's closed form when registered, otherwise central differences of g.
Christoffel christoffel(const ManifoldModel& model, const Vector& theta, double fd_step = kDefaultFdStep);

// Always the finite-difference route.
Christoffel christoffel_fd(const ManifoldModel& model, const Vector& theta, double fd_step = kDefaultFdStep);

// R^ρ_σμν = ∂_μ Γ^ρ_νσ - ∂_ν Γ^ρ_μσ + Γ^ρ_μλ Γ^λ_νσ - Γ^ρ_νλ Γ^λ_μσ with central
// differences of Γ. `use_override` picks the closed-form Γ when registered.
Riemann riemann_from_connection(const ManifoldModel& model, const Vector& theta, double fd_step = kDefaultFdStep,
                                bool use_override = true);

// The model's closed-form Riemann tensor when registered, else riemann_from_connection.
Riemann riemann(const ManifoldModel& model, const Vector& theta, double fd_step = kDefaultFdStep);

struct CurvatureOptions {
    double fd_step = kDefaultFdStep;
    bool use_overrides = true;    // closed-form Γ where registered
    bool richardson_check = true; // recompute the scalar at fd_step/2
    double richardson_tol = 1e-4; // allowed |R(h) - R(h/2)| / max(1, |R|)
};

struct CurvatureReport {
    Vector point;
    Christoffel christoffel;
    Riemann riemann;
    Matrix ricci;        // R_σν = R^ρ_σρν
    double scalar = 0.0; // g^σν R_σν
    // frame: columns are the coordinate basis Gram-Schmidt orthonormalized under g.
    // sectional(i, j): K of the plane (frame_i, frame_j); zero diagonal.
    Matrix frame;
    Matrix sectional;
    double scalar_half_step = 0.0;  // NaN when the Richardson check is off
    double richardson_delta = 0.0;

    // Σ over ordered pairs i != j; equals `scalar`.
    double sectional_sum() const;
};

// Throws AccuracyError when the two-step Richardson check disagrees.
CurvatureReport curvature(const ManifoldModel& model, const Vector& theta, const CurvatureOptions& options = {});

// K(u, v) = R_λσμν u^λ v^σ u^μ v^ν / (|u|²|v|² - <u,v>²).
double sectional_curvature(const Riemann& R, const Matrix& g, const Vector& u, const Vector& v);

enum class ScalarSign { negative, non_negative, mixed };
const char* to_string(ScalarSign sign);

struct SignSummary {
    ScalarSign sign = ScalarSign::non_negative;
    double min_scalar = 0.0;
    double max_scalar = 0.0;
    std::size_t points = 0;
};

// |R| <= zero_tol counts as zero (non-negative).
SignSummary scalar_sign_classification(const ManifoldModel& model, const std::vector<Vector>& points,
                                       const CurvatureOptions& options = {}, double zero_tol = 1e-6);

// max |R^a_bcd + R^a_cdb + R^a_dbc|
double bianchi_residual(const Riemann& R);

// max |R^a_bcd + R^a_bdc|
double antisymmetry_residual(const Riemann& R);

// max |∇_λ g_μν| / max(1, max |∂_λ g_μν|) with ∂g by Richardson-combined central
// differences and the model's Γ.
double metric_compatibility_residual(const ManifoldModel& model, const Vector& theta,
                                     double fd_step = kDefaultFdStep);

}  // namespace igac
