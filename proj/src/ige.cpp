#include "igac/ige.hpp"

#include <cmath>
#include <limits>

#include "igac/error.hpp"
#include "igac/quadrature.hpp"

namespace igac {

const char* to_string(GrowthModel m) { return m == GrowthModel::linear ? "linear" : "logarithmic"; }

IGESeries IGESeries::from_entropy(std::vector<double> tau, std::vector<double> entropy) {
    if (tau.size() != entropy.size()) throw Error(ErrorKind::shape, "tau and entropy lengths differ");
    IGESeries s;
    s.tau = std::move(tau);
    s.entropy = std::move(entropy);
    for (double e : s.entropy) s.volume.push_back(std::exp(e));
    s.degenerate = s.tau.empty();
    return s;
}

namespace {

bool moved(double a, double b) { return std::abs(b - a) > 1e-14 * std::max(1.0, std::abs(a)); }

double generic_box(const ManifoldModel& model, const Vector& origin, const Vector& corner, const std::vector<int>& axes,
                   int n, std::size_t depth, Vector& point) {
    if (depth == axes.size()) return std::sqrt(std::abs(model.metric(point).determinant()));
    const int axis = axes[depth];
    return integrate_interval(origin[axis], corner[axis], n, [&](double x) {
        point[axis] = x;
        return generic_box(model, origin, corner, axes, n, depth + 1, point);
    });
}

}  // namespace

double box_volume(const ManifoldModel& model, const Vector& origin, const Vector& corner, int quad_nodes) {
    if (quad_nodes < 16) throw Error(ErrorKind::validation, "quad_nodes must be at least 16", "quad_nodes");
    model.validate(origin);
    model.validate(corner);
    std::vector<int> axes;
    for (int i = 0; i < model.dim(); ++i)
        if (moved(origin[i], corner[i])) axes.push_back(i);
    if (axes.empty()) return 0.0;

    if (const auto& factors = model.volume_factors()) {
        double v = 1.0;
        std::size_t next = 0;
        for (int i = 0; i < model.dim(); ++i) {
            const auto& f = (*factors)[static_cast<std::size_t>(i)];
            if (next < axes.size() && axes[next] == i) {
                v *= std::abs(integrate_interval(origin[i], corner[i], quad_nodes, f));
                ++next;
            } else {
                v *= f(corner[i]);
            }
        }
        return v;
    }
    Vector point = corner;
    return std::abs(generic_box(model, origin, corner, axes, quad_nodes, 0, point));
}

IGESeries volume_series(const ManifoldModel& model, const GeodesicTrajectory& traj, int quad_nodes) {
    if (traj.model_name != model.name())
        throw Error(ErrorKind::validation, "trajectory was integrated on '" + traj.model_name + "'", "traj");
    if (traj.size() < 2) throw Error(ErrorKind::insufficient_data, "trajectory has fewer than two samples", "traj");
    IGESeries series;
    const Vector& origin = traj.coords.front();
    series.explored_tau = traj.tau;
    series.explored.reserve(traj.size());
    for (const auto& c : traj.coords) series.explored.push_back(box_volume(model, origin, c, quad_nodes));

    double integral = 0.0;
    const double t0 = traj.tau.front();
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double dt = traj.tau[i] - traj.tau[i - 1];
        integral += 0.5 * dt * (series.explored[i] + series.explored[i - 1]);
        const double V = integral / (traj.tau[i] - t0);
        if (V > 0.0 && std::isfinite(V)) {
            series.tau.push_back(traj.tau[i]);
            series.volume.push_back(V);
            series.entropy.push_back(std::log(V));
        }
    }
    series.degenerate = series.tau.empty();
    return series;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rss = 0.0;
    double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        fit.rss += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - fit.rss / syy : 1.0;
    return fit;
}

// Gaussian-likelihood AIC for a two-parameter least-squares model.
double aic(double rss, std::size_t n) {
    const double floor = std::numeric_limits<double>::min();
    const auto nn = static_cast<double>(n);
    return nn * std::log(std::max(rss, floor) / nn) + 2.0 * 2.0;
}

}  // namespace

FitReport fit_growth(const IGESeries& series, double w0, double w1) {
    if (!(w0 > 0.0) || !(w1 > w0)) throw Error(ErrorKind::validation, "fit window must satisfy 0 < w0 < w1", "window");
    std::vector<double> tau, log_tau, S;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.tau[i];
        if (t < w0 || t > w1) continue;
        if (!(series.volume[i] > 0.0)) throw Error(ErrorKind::validation, "non-positive volume inside the fit window");
        tau.push_back(t);
        log_tau.push_back(std::log(t));
        S.push_back(series.entropy[i]);
    }
    if (tau.size() < 20)
        throw Error(ErrorKind::insufficient_data,
                    "fit window holds " + std::to_string(tau.size()) + " samples; at least 20 are needed", "window");

    const LineFit lin = least_squares(tau, S);
    const LineFit lg = least_squares(log_tau, S);
    FitReport r;
    r.k_ig = lin.slope;
    r.log_c_ig = lin.intercept;
    r.c_ig = lg.slope;
    r.c_ig_prime = lg.intercept;
    r.r2_linear = lin.r2;
    r.r2_log = lg.r2;
    r.aic_linear = aic(lin.rss, tau.size());
    r.aic_log = aic(lg.rss, tau.size());
    r.selected = r.aic_linear < r.aic_log ? GrowthModel::linear : GrowthModel::logarithmic;
    r.window_lo = w0;
    r.window_hi = w1;
    r.samples = tau.size();
    return r;
}

RateComparison compare_rates(const FitReport& fit, double lambda_j) {
    if (fit.selected != GrowthModel::linear)
        throw Error(ErrorKind::inapplicable, "rate comparison needs a linear (chaotic) IGE fit", "fit");
    RateComparison c;
    c.k_ig = fit.k_ig;
    c.lambda_j = lambda_j;
    c.abs_diff = std::abs(fit.k_ig - lambda_j);
    // A rate estimate at round-off level counts as zero.
    const bool zero = std::abs(lambda_j) <= 1e-12 * std::max(1.0, std::abs(fit.k_ig));
    if (zero || !std::isfinite(lambda_j) || !std::isfinite(fit.k_ig)) {
        c.consistent = false;
        c.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
        c.ratio = fit.k_ig / lambda_j;
    }
    return c;
}

}  // namespace igac
