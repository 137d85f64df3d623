#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "svg.hpp"

namespace cli {
namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};

using FamilyPtr = std::unique_ptr<igac_family, Deleter<igac_family, igac_family_destroy>>;
using ModelPtr = std::unique_ptr<igac_model, Deleter<igac_model, igac_model_destroy>>;
using TrajPtr = std::unique_ptr<igac_trajectory, Deleter<igac_trajectory, igac_trajectory_destroy>>;
using SeriesPtr = std::unique_ptr<igac_ige_series, Deleter<igac_ige_series, igac_ige_series_destroy>>;
using SpectrumPtr = std::unique_ptr<igac_spectrum, Deleter<igac_spectrum, igac_spectrum_destroy>>;

// "exponential" or a product such as "exponential*gaussian".
FamilyPtr open_family(const std::string& name) {
    std::vector<FamilyPtr> factors;
    std::string part;
    std::istringstream in(name);
    while (std::getline(in, part, '*')) {
        igac_family* f = nullptr;
        check(igac_family_create(part.c_str(), &f), "family");
        factors.emplace_back(f);
    }
    if (factors.empty()) throw validation_error("empty family name", "family");
    if (factors.size() == 1) return std::move(factors.front());
    std::vector<const igac_family*> raw;
    for (const auto& f : factors) raw.push_back(f.get());
    igac_family* product = nullptr;
    check(igac_family_create_product(raw.data(), raw.size(), &product), "family");
    return FamilyPtr(product);
}

// A registered manifold name, or any family name (its Fisher manifold).
ModelPtr open_model(const std::string& name) {
    igac_model* m = nullptr;
    if (igac_model_create(name.c_str(), &m) == IGAC_OK) return ModelPtr(m);
    const std::string message = igac_last_error_message();
    igac_family* f = nullptr;
    if (name.find('*') == std::string::npos && igac_family_create(name.c_str(), &f) != IGAC_OK)
        throw validation_error(message, "manifold");
    FamilyPtr family = f ? FamilyPtr(f) : open_family(name);
    check(igac_model_from_family(family.get(), &m), "manifold");
    return ModelPtr(m);
}

std::vector<std::string> family_params(const igac_family* f) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < igac_family_param_count(f); ++i) names.emplace_back(igac_family_param_name(f, i));
    return names;
}

std::vector<std::string> coord_names(const igac_model* m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < igac_model_dim(m); ++i) names.emplace_back(igac_model_coord_name(m, i));
    return names;
}

json named(const std::vector<std::string>& names, const std::vector<double>& values) {
    json j = json::object();
    for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) j[names[i]] = values[i];
    return j;
}

std::vector<std::vector<double>> sample_points(const std::string& grid, const std::string& point, int random,
                                               std::uint64_t seed, const std::vector<std::string>& names) {
    if (!point.empty() && !grid.empty()) throw validation_error("give either --point or --grid, not both", "grid");
    if (!point.empty()) {
        if (random > 0) throw validation_error("--random needs a --grid box", "random");
        return {parse_point(point, names, "point")};
    }
    if (grid.empty()) throw validation_error("a --grid or --point is required", "grid");
    if (random < 0) throw validation_error("--random must be non-negative", "random");
    const auto axes = parse_grid(grid, names, random == 0);
    return random > 0 ? random_points(axes, random, seed) : grid_points(axes);
}

// ------------------------------------------------------------------ metric

class MetricCommand : public Command {
public:
    explicit MetricCommand(CLI::App& parent)
        : Command(parent, "metric", "Fisher-Rao metric: closed form against quadrature") {
        igac_quad_spec q;
        igac_quad_spec_default(&q);
        nodes_ = q.nodes;
        max_nodes_ = q.max_nodes;
        tol_ = q.tol;
        params_.add("family", family_, "family name; products as a*b");
        params_.add("grid", grid_, "grid spec name=lo:hi:count,...");
        params_.add("point", point_, "single point name=value,...");
        params_.add("nodes", nodes_, "initial quadrature nodes per axis");
        params_.add("max-nodes", max_nodes_, "quadrature node ceiling");
        params_.add("tol", tol_, "quadrature convergence tolerance");
    }

    void run(const GlobalOptions& g, const json&) override {
        const auto family = open_family(family_);
        const auto names = family_params(family.get());
        const auto points = sample_points(grid_, point_, 0, g.seed, names);
        const std::size_t d = names.size();
        const igac_quad_spec spec{nodes_, max_nodes_, tol_};

        struct Row {
            std::vector<double> closed, quad;
            double error_estimate = 0.0;
            int nodes = 0;
            double rel_error = 0.0;
        };
        std::vector<Row> rows(points.size());
        parallel_for(points.size(), g.jobs, [&](std::size_t i) {
            Row& r = rows[i];
            r.closed.resize(d * d);
            r.quad.resize(d * d);
            check(igac_fisher_metric_closed_form(family.get(), points[i].data(), d, r.closed.data()), "closed form");
            check(igac_fisher_metric_quadrature(family.get(), points[i].data(), d, &spec, r.quad.data(),
                                                &r.error_estimate, &r.nodes),
                  "quadrature");
            double diff = 0.0, norm = 0.0;
            for (std::size_t k = 0; k < d * d; ++k) {
                diff += (r.quad[k] - r.closed[k]) * (r.quad[k] - r.closed[k]);
                norm += r.closed[k] * r.closed[k];
            }
            r.rel_error = std::sqrt(diff / norm);
        });

        Table t;
        for (const auto& n : names) t.columns.push_back(n + " [-]");
        for (const char* kind : {"g_closed", "g_quad"})
            for (const auto& a : names)
                for (const auto& b : names) t.columns.push_back(std::string(kind) + "_" + a + "_" + b + " [-]");
        t.columns.insert(t.columns.end(), {"rel_error [-]", "quad_error_estimate [-]", "quad_nodes [count]"});
        std::size_t worst = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto row = points[i];
            row.insert(row.end(), rows[i].closed.begin(), rows[i].closed.end());
            row.insert(row.end(), rows[i].quad.begin(), rows[i].quad.end());
            row.insert(row.end(), {rows[i].rel_error, rows[i].error_estimate, static_cast<double>(rows[i].nodes)});
            t.rows.push_back(std::move(row));
            if (rows[i].rel_error > rows[worst].rel_error) worst = i;
        }
        write_table(g, "metric", t);

        json summary;
        summary["family"] = igac_family_label(family.get());
        summary["points"] = points.size();
        summary["max_rel_error"] = rows[worst].rel_error;
        summary["worst_point"] = named(names, points[worst]);
        summary["quadrature"] = {{"nodes", nodes_}, {"max_nodes", max_nodes_}, {"tol", tol_}};
        write_json(fs::path(g.out) / "metric_summary.json", summary);

        if (g.plot) {
            Plot p;
            if (d == 1) {
                p.title = "Fisher metric, " + family_;
                p.xlabel = names[0];
                p.ylabel = "g";
                Curve closed{"closed form", {}, {}, kPalette[0]};
                Curve quad{"quadrature", {}, {}, kPalette[1], false, true};
                for (std::size_t i = 0; i < points.size(); ++i) {
                    closed.x.push_back(points[i][0]);
                    closed.y.push_back(rows[i].closed[0]);
                    quad.x.push_back(points[i][0]);
                    quad.y.push_back(rows[i].quad[0]);
                }
                p.curves = {closed, quad};
            } else {
                p.title = "Quadrature relative error, " + family_;
                p.xlabel = "grid point";
                p.ylabel = "log10 relative error";
                Curve c{"rel error", {}, {}, kPalette[0], false, true};
                for (std::size_t i = 0; i < points.size(); ++i) {
                    c.x.push_back(static_cast<double>(i));
                    c.y.push_back(std::log10(std::max(rows[i].rel_error, 1e-17)));
                }
                p.curves = {c};
            }
            write_svg(fs::path(g.out) / "metric.svg", p);
        }
    }

private:
    std::string family_ = "exponential";
    std::string grid_;
    std::string point_;
    int nodes_ = 64;
    int max_nodes_ = 2048;
    double tol_ = 1e-8;
};

// --------------------------------------------------------------- curvature

class CurvatureCommand : public Command {
public:
    explicit CurvatureCommand(CLI::App& parent)
        : Command(parent, "curvature", "Ricci scalar and sectional curvatures at sample points") {
        params_.add("manifold", manifold_, "integrable, chaotic, gaussian, euclidean2, euclidean3 or a family");
        params_.add("grid", grid_, "grid spec name=lo:hi:count (count optional with --random)");
        params_.add("point", point_, "single point name=value,...");
        params_.add("random", random_, "number of uniform random points inside the --grid box");
        params_.add("fd-step", fd_step_, "finite-difference step");
        params_.add_flag("no-overrides", no_overrides_, "use finite differences even where closed forms exist");
        params_.add_flag("no-richardson", no_richardson_, "skip the half-step consistency check");
        params_.add("richardson-tol", richardson_tol_, "half-step consistency tolerance");
        params_.add("zero-tol", zero_tol_, "|R| below this counts as zero");
    }

    void run(const GlobalOptions& g, const json&) override {
        const auto model = open_model(manifold_);
        const auto names = coord_names(model.get());
        const auto points = sample_points(grid_, point_, random_, g.seed, names);
        const std::size_t d = names.size();
        igac_curvature_options opts;
        igac_curvature_options_default(&opts);
        opts.fd_step = fd_step_;
        opts.use_overrides = no_overrides_ ? 0 : 1;
        opts.richardson_check = no_richardson_ ? 0 : 1;
        opts.richardson_tol = richardson_tol_;

        std::vector<igac_curvature_summary> sums(points.size());
        std::vector<std::vector<double>> sectional(points.size(), std::vector<double>(d * d));
        parallel_for(points.size(), g.jobs, [&](std::size_t i) {
            check(igac_curvature(model.get(), points[i].data(), d, &opts, &sums[i], nullptr, nullptr,
                                 sectional[i].data()),
                  "curvature");
        });

        std::vector<double> flat;
        for (const auto& p : points) flat.insert(flat.end(), p.begin(), p.end());
        igac_scalar_sign sign;
        double lo = 0.0, hi = 0.0;
        check(igac_scalar_sign_classification(model.get(), flat.data(), points.size(), d, &opts, zero_tol_, &sign,
                                              &lo, &hi),
              "sign classification");

        Table t;
        for (const auto& n : names) t.columns.push_back(n + " [-]");
        t.columns.insert(t.columns.end(),
                         {"scalar [-]", "scalar_half_step [-]", "richardson_delta [-]", "sectional_sum [-]"});
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) t.columns.push_back("K_" + names[a] + "_" + names[b] + " [-]");
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto row = points[i];
            row.insert(row.end(), {sums[i].scalar, sums[i].scalar_half_step, sums[i].richardson_delta,
                                   sums[i].sectional_sum});
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a + 1; b < d; ++b) row.push_back(sectional[i][a * d + b]);
            t.rows.push_back(std::move(row));
        }
        write_table(g, "curvature", t);

        json summary;
        summary["manifold"] = igac_model_name(model.get());
        summary["points"] = points.size();
        summary["scalar_sign"] = igac_scalar_sign_name(sign);
        summary["min_scalar"] = lo;
        summary["max_scalar"] = hi;
        summary["use_overrides"] = !no_overrides_;
        write_json(fs::path(g.out) / "curvature_summary.json", summary);

        if (g.plot) {
            Plot p{"Ricci scalar, " + manifold_, "sample point", "R", {}, std::nullopt};
            Curve c{"R", {}, {}, kPalette[0], false, true};
            for (std::size_t i = 0; i < points.size(); ++i) {
                c.x.push_back(static_cast<double>(i));
                c.y.push_back(sums[i].scalar);
            }
            p.curves = {c};
            write_svg(fs::path(g.out) / "curvature.svg", p);
        }
    }

private:
    std::string manifold_ = "chaotic";
    std::string grid_;
    std::string point_;
    int random_ = 0;
    double fd_step_ = 1e-4;
    bool no_overrides_ = false;
    bool no_richardson_ = false;
    double richardson_tol_ = 1e-4;
    double zero_tol_ = 1e-6;
};

// ------------------------------------------------------------ trajectories

struct Defaults {
    std::vector<double> theta0, v0;
};

// Initial data used when --theta0/--v0 are omitted. The chaotic default keeps
// mu_A at rest and drives the Gaussian block slowly enough that sigma_B stays
// clear of the boundary tolerance up to tau = 100.
const std::map<std::string, Defaults>& initial_defaults() {
    static const std::map<std::string, Defaults> table{
        {"integrable", {{1.0, 1.0}, {0.1, 0.1}}},
        {"chaotic", {{1.0, 0.0, 1.0}, {0.0, 0.25, 0.0}}},
        {"gaussian", {{0.0, 1.0}, {0.0, 0.70710678118654752}}},
        {"euclidean2", {{0.0, 0.0}, {1.0, 0.0}}},
        {"euclidean3", {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}},
    };
    return table;
}

class TrajectoryCommand : public Command {
public:
    TrajectoryCommand(CLI::App& parent, const std::string& name, const std::string& description, double tau_max)
        : Command(parent, name, description), tau_max_(tau_max) {
        igac_integrate_options o;
        igac_integrate_options_default(&o);
        tol_ = o.tol;
        max_step_ = o.max_step;
        boundary_tol_ = o.boundary_tol;
        fd_step_ = o.fd_step;
        params_.add("manifold", manifold_, "integrable, chaotic, gaussian, euclidean2, euclidean3 or a family");
        params_.add("theta0", theta0_, "initial point name=value,...");
        params_.add("v0", v0_, "initial coordinate velocity name=value,...");
        params_.add("tau-max", tau_max_, "affine-parameter span");
        params_.add("tol", tol_, "integrator error tolerance");
        params_.add("max-step", max_step_, "largest step; 0 means tau_max/1000");
        params_.add("boundary-tol", boundary_tol_, "stop when a coordinate comes this close to its domain edge");
        params_.add("fd-step", fd_step_, "finite-difference step for Christoffel symbols");
    }

protected:
    struct Start {
        ModelPtr model;
        std::vector<std::string> names;
        std::vector<double> theta0, v0;
    };

    Start start() const {
        if (!(tau_max_ > 0.0) || !std::isfinite(tau_max_))
            throw validation_error("tau_max must be positive", "tau_max");
        Start s{open_model(manifold_), {}, {}, {}};
        s.names = coord_names(s.model.get());
        const auto it = initial_defaults().find(igac_model_name(s.model.get()));
        if (theta0_.empty() || v0_.empty()) {
            if (it == initial_defaults().end())
                throw validation_error("no default initial data for '" + manifold_ + "'; pass --theta0 and --v0",
                                       theta0_.empty() ? "theta0" : "v0");
        }
        s.theta0 = theta0_.empty() ? it->second.theta0 : parse_point(theta0_, s.names, "theta0");
        s.v0 = v0_.empty() ? it->second.v0 : parse_point(v0_, s.names, "v0");
        return s;
    }

    igac_integrate_options options() const { return {tol_, max_step_, boundary_tol_, fd_step_}; }

    TrajPtr geodesic(const Start& s) const {
        igac_trajectory* t = nullptr;
        const auto opts = options();
        check(igac_integrate_geodesic(s.model.get(), s.theta0.data(), s.v0.data(), s.names.size(), tau_max_, &opts,
                                      &t),
              "geodesic");
        return TrajPtr(t);
    }

    std::pair<double, double> window() const {
        if (window_.empty()) return {tau_max_ / 10.0, tau_max_};
        return parse_window(window_, "window");
    }

    void add_window_option() { params_.add("window", window_, "fit window lo:hi (default tau_max/10:tau_max)"); }

    struct Samples {
        std::vector<double> tau, speed, coords, velocity;
    };

    static Samples samples(const igac_trajectory* t) {
        const auto n = igac_trajectory_size(t), d = igac_trajectory_dim(t);
        Samples s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n * d),
                  std::vector<double>(n * d)};
        check(igac_trajectory_tau(t, s.tau.data(), n));
        check(igac_trajectory_speed(t, s.speed.data(), n));
        check(igac_trajectory_coords(t, s.coords.data(), n * d));
        check(igac_trajectory_velocity(t, s.velocity.data(), n * d));
        return s;
    }

    static json termination(const igac_trajectory* t) {
        json j;
        j["termination"] = igac_trajectory_hit_boundary(t) ? "boundary" : "completed";
        if (igac_trajectory_hit_boundary(t)) j["boundary_coordinate"] = igac_trajectory_boundary_coordinate(t);
        return j;
    }

    std::string manifold_ = "integrable";
    std::string theta0_;
    std::string v0_;
    double tau_max_;
    double tol_ = 1e-10;
    double max_step_ = 0.0;
    double boundary_tol_ = 1e-9;
    double fd_step_ = 1e-4;
    std::string window_;
};

class GeodesicCommand : public TrajectoryCommand {
public:
    explicit GeodesicCommand(CLI::App& parent)
        : TrajectoryCommand(parent, "geodesic", "Integrate a geodesic from initial data", 10.0) {}

    void run(const GlobalOptions& g, const json&) override {
        const auto s = start();
        const auto traj = geodesic(s);
        const auto data = samples(traj.get());
        const std::size_t d = s.names.size(), n = data.tau.size();

        Table t;
        t.columns.push_back("tau [-]");
        for (const auto& c : s.names) t.columns.push_back(c + " [-]");
        for (const auto& c : s.names) t.columns.push_back("d" + c + "/dtau [1/tau]");
        t.columns.push_back("speed [1/tau]");
        double drift = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row{data.tau[i]};
            row.insert(row.end(), data.coords.begin() + i * d, data.coords.begin() + (i + 1) * d);
            row.insert(row.end(), data.velocity.begin() + i * d, data.velocity.begin() + (i + 1) * d);
            row.push_back(data.speed[i]);
            t.rows.push_back(std::move(row));
            drift = std::max(drift, std::abs(data.speed[i] - data.speed[0]));
        }
        write_table(g, "geodesic", t);

        json summary = termination(traj.get());
        summary["manifold"] = igac_model_name(s.model.get());
        summary["samples"] = n;
        summary["tau_end"] = data.tau.back();
        summary["theta0"] = named(s.names, s.theta0);
        summary["v0"] = named(s.names, s.v0);
        summary["theta_end"] = named(s.names, std::vector<double>(data.coords.end() - d, data.coords.end()));
        summary["speed"] = data.speed.front();
        summary["max_speed_drift"] = drift;
        write_json(fs::path(g.out) / "geodesic_summary.json", summary);

        if (g.plot) {
            Plot p{"Geodesic on " + manifold_, "tau", "coordinate", {}, std::nullopt};
            for (std::size_t k = 0; k < d; ++k) {
                Curve c{s.names[k], data.tau, {}, kPalette[k % 6]};
                for (std::size_t i = 0; i < n; ++i) c.y.push_back(data.coords[i * d + k]);
                p.curves.push_back(std::move(c));
            }
            write_svg(fs::path(g.out) / "geodesic.svg", p);
        }
    }
};

class JacobiCommand : public TrajectoryCommand {
public:
    explicit JacobiCommand(CLI::App& parent)
        : TrajectoryCommand(parent, "jacobi", "Jacobi field along a geodesic and its growth rate", 30.0) {
        manifold_ = "gaussian";
        params_.add("j0", j0_, "initial Jacobi field (default: unit coordinate vector of the first coordinate)");
        params_.add("dj0", dj0_, "initial covariant derivative of the field (default 0)");
        add_window_option();
    }

    void run(const GlobalOptions& g, const json&) override {
        const auto s = start();
        const auto geo = geodesic(s);
        const std::size_t d = s.names.size();
        std::vector<double> j0(d, 0.0), dj0(d, 0.0);
        j0[0] = 1.0;
        if (!j0_.empty()) j0 = parse_point(j0_, s.names, "j0");
        if (!dj0_.empty()) dj0 = parse_point(dj0_, s.names, "dj0");
        const auto opts = options();
        igac_trajectory* raw = nullptr;
        check(igac_integrate_jacobi(s.model.get(), geo.get(), j0.data(), dj0.data(), d, &opts, &raw), "jacobi");
        const TrajPtr traj(raw);
        const auto data = samples(traj.get());
        const std::size_t n = data.tau.size();
        std::vector<double> norm(n);
        check(igac_trajectory_jacobi_norm(traj.get(), norm.data(), n));

        Table t;
        t.columns.push_back("tau [-]");
        for (const auto& c : s.names) t.columns.push_back(c + " [-]");
        t.columns.push_back("jacobi_norm [-]");
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row{data.tau[i]};
            row.insert(row.end(), data.coords.begin() + i * d, data.coords.begin() + (i + 1) * d);
            row.push_back(norm[i]);
            t.rows.push_back(std::move(row));
        }
        write_table(g, "jacobi", t);

        const auto [w0, w1] = window();
        double lambda = 0.0, r2 = 0.0;
        check(igac_estimate_lambda_j(traj.get(), w0, w1, &lambda, &r2), "lambda_j");
        json summary = termination(traj.get());
        summary["manifold"] = igac_model_name(s.model.get());
        summary["lambda_j"] = lambda;
        summary["r2"] = r2;
        summary["window"] = {w0, w1};
        summary["j0"] = named(s.names, j0);
        summary["dj0"] = named(s.names, dj0);
        write_json(fs::path(g.out) / "jacobi_summary.json", summary);

        if (g.plot) {
            Plot p{"Jacobi field growth, " + manifold_, "tau", "log ||J||", {}, std::nullopt};
            Curve c{"log ||J||", data.tau, {}, kPalette[0]};
            for (double v : norm) c.y.push_back(std::log(v));
            Curve fit{"slope lambda_J", {w0, w1}, {}, kPalette[1], true};
            // Anchor the slope line on the sample nearest the window start.
            const auto k = static_cast<std::size_t>(
                std::lower_bound(data.tau.begin(), data.tau.end(), w0) - data.tau.begin());
            const double anchor = std::log(norm[std::min(k, n - 1)]);
            fit.y = {anchor, anchor + lambda * (w1 - w0)};
            p.curves = {c, fit};
            write_svg(fs::path(g.out) / "jacobi.svg", p);
        }
    }

private:
    std::string j0_;
    std::string dj0_;
};

json fit_json(const igac_fit_report& f) {
    json j;
    j["selected"] = igac_growth_model_name(f.selected);
    j["c_ig"] = f.c_ig;
    j["c_ig_prime"] = f.c_ig_prime;
    j["k_ig"] = f.k_ig;
    j["log_c_ig"] = f.log_c_ig;
    j["r2_log"] = f.r2_log;
    j["r2_linear"] = f.r2_linear;
    j["r2_selected"] = f.selected == IGAC_GROWTH_LINEAR ? f.r2_linear : f.r2_log;
    j["aic_log"] = f.aic_log;
    j["aic_linear"] = f.aic_linear;
    j["window"] = {f.window_lo, f.window_hi};
    j["samples"] = f.samples;
    return j;
}

class IgeCommand : public TrajectoryCommand {
public:
    explicit IgeCommand(CLI::App& parent)
        : TrajectoryCommand(parent, "ige", "Information-geometric entropy along a geodesic and its growth law", 100.0) {
        params_.add("quad-nodes", quad_nodes_, "Gauss-Legendre nodes per axis for the box volume");
        params_.add("j0", j0_, "if set, also integrate this Jacobi field and compare K_IG with lambda_J");
        add_window_option();
    }

    void run(const GlobalOptions& g, const json&) override {
        const auto s = start();
        const auto [w0, w1] = window();
        const auto geo = geodesic(s);
        igac_ige_series* raw = nullptr;
        check(igac_volume_series(s.model.get(), geo.get(), quad_nodes_, &raw), "volume");
        const SeriesPtr series(raw);
        const auto n = igac_ige_series_size(series.get());
        std::vector<double> tau(n), volume(n), entropy(n);
        check(igac_ige_series_tau(series.get(), tau.data(), n));
        check(igac_ige_series_volume(series.get(), volume.data(), n));
        check(igac_ige_series_entropy(series.get(), entropy.data(), n));

        Table t{{"tau [-]", "volume [-]", "entropy [nat]"}, {}};
        for (std::size_t i = 0; i < n; ++i) t.rows.push_back({tau[i], volume[i], entropy[i]});
        write_table(g, "ige", t);

        if (igac_ige_series_is_degenerate(series.get()))
            throw CliError(kNumerical, "insufficient_data", "the trajectory never explored a positive volume",
                           "v0");
        igac_fit_report fit;
        check(igac_fit_growth(series.get(), w0, w1, &fit), "fit");

        json report = termination(geo.get());
        report["manifold"] = igac_model_name(s.model.get());
        report["theta0"] = named(s.names, s.theta0);
        report["v0"] = named(s.names, s.v0);
        report["tau_max"] = tau_max_;
        report["fit"] = fit_json(fit);
        if (!j0_.empty()) report["rate_comparison"] = compare(s, geo.get(), fit, w0, w1);
        write_json(fs::path(g.out) / "ige_fit.json", report);

        if (g.plot) {
            Plot p{"IGE growth, " + manifold_, "tau", "S [nat]", {}, std::nullopt};
            p.curves.push_back(Curve{"S(tau)", tau, entropy, kPalette[0]});
            Curve c{std::string("fit: ") + igac_growth_model_name(fit.selected), {}, {}, kPalette[1], true};
            for (std::size_t i = 0; i < n; ++i) {
                if (tau[i] < w0 || tau[i] > w1) continue;
                c.x.push_back(tau[i]);
                c.y.push_back(fit.selected == IGAC_GROWTH_LINEAR ? fit.k_ig * tau[i] + fit.log_c_ig
                                                                 : fit.c_ig * std::log(tau[i]) + fit.c_ig_prime);
            }
            p.curves.push_back(std::move(c));
            write_svg(fs::path(g.out) / "ige.svg", p);
        }
    }

private:
    json compare(const Start& s, const igac_trajectory* geo, const igac_fit_report& fit, double w0, double w1) const {
        const std::size_t d = s.names.size();
        const auto j0 = parse_point(j0_, s.names, "j0");
        const std::vector<double> dj0(d, 0.0);
        const auto opts = options();
        igac_trajectory* raw = nullptr;
        check(igac_integrate_jacobi(s.model.get(), geo, j0.data(), dj0.data(), d, &opts, &raw), "jacobi");
        const TrajPtr traj(raw);
        double lambda = 0.0, r2 = 0.0;
        check(igac_estimate_lambda_j(traj.get(), w0, w1, &lambda, &r2), "lambda_j");
        json j;
        j["lambda_j"] = lambda;
        j["lambda_j_r2"] = r2;
        j["j0"] = named(s.names, j0);
        igac_rate_comparison cmp;
        if (fit.selected != IGAC_GROWTH_LINEAR) {
            j["applicable"] = false;
            return j;
        }
        check(igac_compare_rates(&fit, lambda, &cmp), "rate comparison");
        j["applicable"] = true;
        j["k_ig"] = cmp.k_ig;
        j["ratio"] = cmp.ratio;
        j["abs_diff"] = cmp.abs_diff;
        j["consistent"] = cmp.consistent != 0;
        return j;
    }

    int quad_nodes_ = 32;
    std::string j0_;
};

// ------------------------------------------------------------------- chain

igac_sector parse_sector(const std::string& name) {
    for (auto s : {IGAC_SECTOR_FULL, IGAC_SECTOR_REFLECTION_EVEN, IGAC_SECTOR_REFLECTION_ODD})
        if (name == igac_sector_name(s)) return s;
    throw validation_error("unknown sector '" + name + "' (full, reflection_even, reflection_odd)", "sector");
}

class ChainCommand : public Command {
public:
    explicit ChainCommand(CLI::App& parent)
        : Command(parent, "chain", "Spin-chain spectrum, unfolded spacings and level-spacing verdict") {
        igac_unfold_options u;
        igac_unfold_options_default(&u);
        degree_ = u.poly_degree;
        trim_ = u.trim_fraction;
        max_condition_ = u.max_condition;
        igac_lsd_options l;
        igac_lsd_options_default(&l);
        margin_ = l.margin;
        max_ks_ = l.max_ks;
        params_.add("n", n_, "number of spins (comma list sweeps)");
        params_.add("hx", hx_, "transverse field h_x (comma list sweeps)");
        params_.add("hy", hy_, "field h_y (comma list sweeps)");
        params_.add("sector", sector_, "full, reflection_even or reflection_odd");
        params_.add("degree", degree_, "unfolding polynomial degree");
        params_.add("trim", trim_, "fraction of levels trimmed at each spectrum edge");
        params_.add("max-condition", max_condition_, "largest accepted condition number of the unfolding fit");
        params_.add("margin", margin_, "KS distance gap needed for a verdict");
        params_.add("max-ks", max_ks_, "KS distance above which a law is not matched");
        params_.add("bins", bins_, "histogram bins for the spacing plot");
    }

    void run(const GlobalOptions& g, const json& config) override {
        const auto sector = parse_sector(sector_);
        if (n_.empty() || hx_.empty() || hy_.empty()) throw validation_error("empty sweep list", "n");
        if (bins_ < 5) throw validation_error("bins must be at least 5", "bins");
        struct Job {
            igac_chain_spec spec;
            fs::path dir;
        };
        std::vector<Job> jobs;
        const bool sweep = n_.size() * hx_.size() * hy_.size() > 1;
        for (int n : n_)
            for (double hx : hx_)
                for (double hy : hy_) {
                    fs::path dir(g.out);
                    if (sweep) dir /= "chain_n" + std::to_string(n) + "_hx" + tag(hx) + "_hy" + tag(hy);
                    jobs.push_back({{n, hx, hy, sector}, dir});
                }
        const igac_unfold_options uo{degree_, trim_, max_condition_};
        const igac_lsd_options lo{margin_, max_ks_};
        parallel_for(jobs.size(), g.jobs, [&](std::size_t i) { run_one(g, config, jobs[i].spec, jobs[i].dir, uo, lo); });
    }

private:
    static std::string tag(double v) {
        auto s = format_number(v);
        std::replace(s.begin(), s.end(), '.', 'p');
        return s;
    }

    void run_one(const GlobalOptions& g, const json& config, const igac_chain_spec& spec, const fs::path& dir,
                 const igac_unfold_options& uo, const igac_lsd_options& lo) const {
        igac_spectrum* raw = nullptr;
        check(igac_analyze_chain(&spec, &uo, &lo, &raw), "chain n=" + std::to_string(spec.n));
        const SpectrumPtr spectrum(raw);
        const auto ne = igac_spectrum_eigenvalue_count(spectrum.get());
        const auto ns = igac_spectrum_spacing_count(spectrum.get());
        std::vector<double> ev(ne), sp(ns);
        check(igac_spectrum_eigenvalues(spectrum.get(), ev.data(), ne));
        check(igac_spectrum_spacings(spectrum.get(), sp.data(), ns));
        igac_lsd_result lsd;
        check(igac_spectrum_lsd(spectrum.get(), &lsd));

        prepare_output(dir);
        GlobalOptions local = g;
        local.out = dir.string();
        Table te{{"index [-]", "energy [J]"}, {}};
        for (std::size_t i = 0; i < ne; ++i) te.rows.push_back({static_cast<double>(i), ev[i]});
        write_table(local, "eigenvalues", te);
        Table ts{{"index [-]", "spacing [mean spacing]"}, {}};
        for (std::size_t i = 0; i < ns; ++i) ts.rows.push_back({static_cast<double>(i), sp[i]});
        write_table(local, "spacings", ts);

        json j;
        j["n"] = spec.n;
        j["hx"] = spec.hx;
        j["hy"] = spec.hy;
        j["sector"] = igac_sector_name(spec.sector);
        j["dimension"] = ne;
        j["spacings"] = ns;
        j["ks_poisson"] = lsd.ks_poisson;
        j["ks_wigner"] = lsd.ks_wigner;
        j["ks_margin"] = std::abs(lsd.ks_poisson - lsd.ks_wigner);
        j["verdict"] = igac_verdict_name(lsd.verdict);
        j["unfold"] = {{"degree", uo.poly_degree}, {"trim", uo.trim_fraction}};
        write_json(dir / "lsd.json", j);
        if (dir != fs::path(g.out)) {
            auto cfg = config;
            cfg["chain"]["n"] = spec.n;
            cfg["chain"]["hx"] = spec.hx;
            cfg["chain"]["hy"] = spec.hy;
            cfg["out"] = dir.string();
            write_json(dir / "run_config.json", cfg);
        }

        if (g.plot) {
            const auto nb = static_cast<std::size_t>(bins_);
            std::vector<double> edges(nb + 1), density(nb), pois(nb), wig(nb);
            check(igac_spacing_histogram(sp.data(), ns, bins_, edges.data(), density.data(), pois.data(), wig.data()));
            Plot p;
            char title[128];
            std::snprintf(title, sizeof title, "Level spacings, n=%d, hx=%g, hy=%g", spec.n, spec.hx, spec.hy);
            p.title = title;
            p.xlabel = "s";
            p.ylabel = "P(s)";
            p.bars = Bars{edges, density, "unfolded spacings"};
            Curve cp{"Poisson", {}, {}, kPalette[0]};
            Curve cw{"Wigner-Dyson", {}, {}, kPalette[1], true};
            for (int k = 0; k <= 200; ++k) {
                const double x = edges.back() * k / 200.0;
                cp.x.push_back(x);
                cp.y.push_back(std::exp(-x));
                cw.x.push_back(x);
                cw.y.push_back(M_PI * x / 2.0 * std::exp(-M_PI * x * x / 4.0));
            }
            p.curves = {cp, cw};
            write_svg(dir / "spacings.svg", p);
        }
    }

    std::vector<int> n_{11};
    std::vector<double> hx_{1.0};
    std::vector<double> hy_{1.0};
    std::string sector_ = "reflection_even";
    int degree_ = 7;
    double trim_ = 0.1;
    double max_condition_ = 1e10;
    double margin_ = 0.01;
    double max_ks_ = 0.15;
    int bins_ = 30;
};

}  // namespace

std::vector<std::unique_ptr<Command>> make_commands(CLI::App& app) {
    std::vector<std::unique_ptr<Command>> commands;
    commands.push_back(std::make_unique<MetricCommand>(app));
    commands.push_back(std::make_unique<CurvatureCommand>(app));
    commands.push_back(std::make_unique<GeodesicCommand>(app));
    commands.push_back(std::make_unique<JacobiCommand>(app));
    commands.push_back(std::make_unique<IgeCommand>(app));
    commands.push_back(std::make_unique<ChainCommand>(app));
    commands.push_back(make_report_command(app));
    return commands;
}

}  // namespace cli
