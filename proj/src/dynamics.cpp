#include "igac/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "igac/error.hpp"

namespace igac {

const char* to_string(Termination t) {
    return t == Termination::completed ? "completed" : "boundary";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

// Returns false when y leaves the model domain.
using Rhs = std::function<bool(const Vector& y, Vector& dy)>;

enum class StepOutcome { advance, stop_boundary };

struct DriverResult {
    Termination termination = Termination::completed;
    std::string boundary_coordinate;
};

class Driver {
public:
    Driver(const ManifoldModel& model, Rhs rhs, const IntegrateOptions& options, double span)
        : model_(model), rhs_(std::move(rhs)), options_(options) {
        if (!(options.tol > 0.0)) throw Error(ErrorKind::validation, "tol must be positive", "tol");
        max_step_ = options.max_step > 0.0 ? options.max_step : span / 1000.0;
    }

    // Integrates from (t0, y) towards t1; `observe` sees every accepted state.
    // When `stops` is non-empty, steps land exactly on each stop and only stops are observed.
    template <class Observe>
    DriverResult run(double t0, double t1, Vector y, const std::vector<double>& stops, Observe&& observe) {
        const int dim = model_.dim();
        Vector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()), k6(y.size()), k7(y.size());
        if (!rhs_(y, k1)) throw Error(ErrorKind::domain, model_.name() + ": initial point outside the domain");

        double t = t0;
        double h = std::min(max_step_, 1e-3 * (t1 - t0));
        std::size_t next_stop = 0;
        while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;
        std::size_t steps = 0;
        DriverResult result;

        while (t < t1) {
            if (++steps > options_.max_steps)
                throw SingularityError(model_.name() + ": step budget exhausted", t, to_std(y));
            double target = t1;
            if (next_stop < stops.size()) target = std::min(target, stops[next_stop]);
            bool lands = false;
            double step = std::min(h, max_step_);
            if (t + step >= target) {
                step = target - t;
                lands = true;
            }
            const double h_min = 1e-13 * std::max(1.0, std::abs(t));
            if (step < h_min && !lands) {
                throw SingularityError(model_.name() + ": step size underflow at tau = " + std::to_string(t), t,
                                       to_std(y));
            }

            Vector trial(y.size());
            bool inside = true;
            auto stage = [&](const Vector& arg, Vector& out) {
                if (inside && !rhs_(arg, out)) inside = false;
            };
            stage(y + step * (a21 * k1), k2);
            if (inside) stage(y + step * (a31 * k1 + a32 * k2), k3);
            if (inside) stage(y + step * (a41 * k1 + a42 * k2 + a43 * k3), k4);
            if (inside) stage(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
            if (inside) stage(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
            if (inside) {
                trial = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
                stage(trial, k7);
            }
            if (!inside) {
                // A stage left the domain: shrink until the step stays inside or we are pinned to the edge.
                h = 0.25 * step;
                if (h < h_min) {
                    result.termination = Termination::boundary;
                    result.boundary_coordinate = nearest_edge(y);
                    return result;
                }
                continue;
            }

            const Vector err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double norm = 0.0;
            for (int i = 0; i < y.size(); ++i) {
                const double scale = options_.tol * (1.0 + std::max(std::abs(y[i]), std::abs(trial[i])));
                norm = std::max(norm, std::abs(err[i]) / scale);
            }
            if (norm > 1.0) {
                h = step * std::max(0.2, 0.9 * std::pow(norm, -0.2));
                continue;
            }

            t = lands ? target : t + step;
            y = std::move(trial);
            k1 = k7;
            const double grow = norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(norm, -0.2));
            if (!lands || step >= h) h = step * grow;

            const bool at_stop = lands && next_stop < stops.size() && target == stops[next_stop];
            if (at_stop) ++next_stop;
            if (stops.empty() || at_stop) observe(t, y);

            const std::string edge = near_edge(y.head(dim));
            if (!edge.empty()) {
                if (!stops.empty() && !at_stop) observe(t, y);
                result.termination = Termination::boundary;
                result.boundary_coordinate = edge;
                return result;
            }
        }
        return result;
    }

private:
    static std::vector<double> to_std(const Vector& y) { return {y.data(), y.data() + y.size()}; }

    std::string near_edge(const Vector& theta) const {
        for (int i = 0; i < model_.dim(); ++i) {
            const auto& dom = model_.domain()[static_cast<std::size_t>(i)];
            if ((dom.bounded_below() && theta[i] - dom.lo <= options_.boundary_tol) ||
                (dom.bounded_above() && dom.hi - theta[i] <= options_.boundary_tol))
                return model_.coord_names()[static_cast<std::size_t>(i)];
        }
        return {};
    }

    std::string nearest_edge(const Vector& y) const {
        double best = kInf;
        std::string name;
        for (int i = 0; i < model_.dim(); ++i) {
            const auto& dom = model_.domain()[static_cast<std::size_t>(i)];
            const double gap = std::min(dom.bounded_below() ? y[i] - dom.lo : kInf,
                                        dom.bounded_above() ? dom.hi - y[i] : kInf);
            if (gap < best) {
                best = gap;
                name = model_.coord_names()[static_cast<std::size_t>(i)];
            }
        }
        return name;
    }

    const ManifoldModel& model_;
    Rhs rhs_;
    IntegrateOptions options_;
    double max_step_ = 0.0;
};

// Γ^ρ_μν a^μ b^ν
Vector contract(const Christoffel& gamma, const Vector& a, const Vector& b) {
    const int d = gamma.dim();
    Vector out = Vector::Zero(d);
    for (int r = 0; r < d; ++r)
        for (int m = 0; m < d; ++m) {
            if (a[m] == 0.0) continue;
            for (int n = 0; n < d; ++n) out[r] += gamma(r, m, n) * a[m] * b[n];
        }
    return out;
}

void check_dim(const ManifoldModel& model, const Vector& v, const char* what) {
    if (v.size() != model.dim()) {
        std::ostringstream msg;
        msg << model.name() << ": " << what << " has " << v.size() << " components, expected " << model.dim();
        throw Error(ErrorKind::shape, msg.str(), what);
    }
}

double g_norm(const ManifoldModel& model, const Vector& theta, const Vector& v) {
    return std::sqrt(std::max(0.0, v.dot(model.metric(theta) * v)));
}

}  // namespace

GeodesicTrajectory integrate_geodesic(const ManifoldModel& model, const Vector& theta0, const Vector& v0,
                                      double tau_max, const IntegrateOptions& options) {
    check_dim(model, v0, "v0");
    model.validate(theta0);
    if (!(tau_max > 0.0)) throw Error(ErrorKind::validation, "tau_max must be positive", "tau_max");
    const int d = model.dim();

    Rhs rhs = [&](const Vector& y, Vector& dy) {
        const Vector theta = y.head(d);
        if (!model.contains(theta)) return false;
        const Vector v = y.tail(d);
        dy.resize(2 * d);
        dy.head(d) = v;
        dy.tail(d) = -contract(christoffel(model, theta, options.fd_step), v, v);
        return true;
    };

    GeodesicTrajectory traj;
    traj.model_name = model.name();
    auto record = [&](double t, const Vector& y) {
        traj.tau.push_back(t);
        traj.coords.push_back(y.head(d));
        traj.velocity.push_back(y.tail(d));
        traj.speed.push_back(g_norm(model, traj.coords.back(), traj.velocity.back()));
    };
    Vector y(2 * d);
    y << theta0, v0;
    record(0.0, y);
    Driver driver(model, rhs, options, tau_max);
    const auto result = driver.run(0.0, tau_max, y, {}, record);
    traj.termination = result.termination;
    traj.boundary_coordinate = result.boundary_coordinate;
    return traj;
}

GeodesicTrajectory integrate_jacobi(const ManifoldModel& model, const GeodesicTrajectory& traj, const Vector& J0,
                                    const Vector& dJ0, const IntegrateOptions& options) {
    if (traj.size() < 2) throw Error(ErrorKind::insufficient_data, "trajectory has fewer than two samples", "traj");
    if (traj.model_name != model.name())
        throw Error(ErrorKind::validation, "trajectory was integrated on '" + traj.model_name + "', not '" +
                                               model.name() + "'", "traj");
    check_dim(model, J0, "J0");
    check_dim(model, dJ0, "dJ0");
    const int d = model.dim();

    Rhs rhs = [&](const Vector& y, Vector& dy) {
        const Vector theta = y.segment(0, d);
        if (!model.contains(theta)) return false;
        const Vector v = y.segment(d, d);
        const Vector J = y.segment(2 * d, d);
        const Vector P = y.segment(3 * d, d);
        const Christoffel gamma = christoffel(model, theta, options.fd_step);
        const Riemann R = riemann(model, theta, options.fd_step);
        dy.resize(4 * d);
        dy.segment(0, d) = v;
        dy.segment(d, d) = -contract(gamma, v, v);
        dy.segment(2 * d, d) = P - contract(gamma, v, J);
        Vector curv = Vector::Zero(d);
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s)
                for (int m = 0; m < d; ++m)
                    for (int n = 0; n < d; ++n) curv[r] += R(r, s, m, n) * v[s] * J[m] * v[n];
        dy.segment(3 * d, d) = -contract(gamma, v, P) - curv;
        return true;
    };

    GeodesicTrajectory out;
    out.model_name = model.name();
    auto record = [&](double t, const Vector& y) {
        out.tau.push_back(t);
        out.coords.push_back(y.segment(0, d));
        out.velocity.push_back(y.segment(d, d));
        out.speed.push_back(g_norm(model, out.coords.back(), out.velocity.back()));
        out.jacobi.push_back(y.segment(2 * d, d));
        out.jacobi_rate.push_back(y.segment(3 * d, d));
        out.jacobi_norm.push_back(g_norm(model, out.coords.back(), out.jacobi.back()));
    };
    Vector y(4 * d);
    y << traj.coords.front(), traj.velocity.front(), J0, dJ0;
    record(traj.tau.front(), y);
    Driver driver(model, rhs, options, traj.tau.back() - traj.tau.front());
    const auto result = driver.run(traj.tau.front(), traj.tau.back(), y, traj.tau, record);
    out.termination = result.termination;
    out.boundary_coordinate = result.boundary_coordinate;
    return out;
}

LyapunovEstimate estimate_lambda_j(const GeodesicTrajectory& traj, double w0, double w1) {
    if (!traj.has_jacobi()) throw Error(ErrorKind::validation, "trajectory carries no Jacobi field", "traj");
    std::vector<double> xs;
    std::vector<double> ys;
    double base = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.tau[i];
        if (t < w0 || t > w1) continue;
        const double n = traj.jacobi_norm[i];
        if (!(n > 0.0)) throw Error(ErrorKind::validation, "||J|| vanishes inside the window", "window");
        if (xs.empty()) base = std::log(n);
        xs.push_back(t);
        ys.push_back(std::log(n) - base);
    }
    if (xs.size() < 10)
        throw Error(ErrorKind::insufficient_data,
                    "window holds " + std::to_string(xs.size()) + " samples; at least 10 are needed", "window");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LyapunovEstimate est;
    est.samples = xs.size();
    est.lambda_j = sxy / sxx;
    est.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return est;
}

}  // namespace igac
