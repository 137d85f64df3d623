#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "igac/dynamics.hpp"
#include "igac/manifold.hpp"

namespace igac {

enum class GrowthModel { logarithmic, linear };
const char* to_string(GrowthModel m);

struct FitReport {
    GrowthModel selected = GrowthModel::logarithmic;
    // S ≈ c_ig log τ + c'_ig
    double c_ig = 0.0;
    double c_ig_prime = 0.0;
    // S ≈ K_ig τ + log C_ig
    double k_ig = 0.0;
    double log_c_ig = 0.0;
    double r2_log = 0.0;
    double r2_linear = 0.0;
    double aic_log = 0.0;
    double aic_linear = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::size_t samples = 0;

    double r2_selected() const { return selected == GrowthModel::linear ? r2_linear : r2_log; }
};

// Statistical volume along a trajectory: tau, V(τ) > 0 and S(τ) = log V(τ).
// Samples with V = 0 (nothing explored yet) are left out of the series.
struct IGESeries {
    std::vector<double> tau;
    std::vector<double> volume;
    std::vector<double> entropy;
    // Explored volume v(τ') on every trajectory sample, zeros included.
    std::vector<double> explored_tau;
    std::vector<double> explored;
    bool degenerate = false;  // no sample ever explored a positive volume
    std::optional<FitReport> fit;

    std::size_t size() const { return tau.size(); }

    // Series from externally computed entropies (volume = exp(S)).
    static IGESeries from_entropy(std::vector<double> tau, std::vector<double> entropy);
};

// Volume of the coordinate box between Θ(0) and Θ(τ'): ∫_B √g dΘ over the
// coordinates that moved; the rest are held at their current value. Zero when
// no coordinate moved.
double box_volume(const ManifoldModel& model, const Vector& origin, const Vector& corner, int quad_nodes);

// v(τ') = box_volume(Θ(0), Θ(τ')), V(τ) = (1/τ) ∫_0^τ v by the trapezoid rule
// on the trajectory grid, S = log V.
IGESeries volume_series(const ManifoldModel& model, const GeodesicTrajectory& traj, int quad_nodes = 32);

// Fits S against c log τ + c' and K τ + b over [w0, w1]; selects by AIC.
FitReport fit_growth(const IGESeries& series, double w0, double w1);

struct RateComparison {
    double k_ig = 0.0;
    double lambda_j = 0.0;
    double ratio = 0.0;  // K_IG / λ_J; NaN when inconsistent
    double abs_diff = 0.0;
    bool consistent = true;  // false when λ_J is zero to round-off (or either rate is non-finite)
};

// Throws Error(inapplicable) unless the fit selected the linear model.
RateComparison compare_rates(const FitReport& fit, double lambda_j);

}  // namespace igac
