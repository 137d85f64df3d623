// extern "C" bridge over the C++ core. Exceptions never cross this boundary.

#include "igac/igac.h"

#include <cstring>
#include <new>
#include <string>

#include "igac/dynamics.hpp"
#include "igac/error.hpp"
#include "igac/families.hpp"
#include "igac/geometry.hpp"
#include "igac/ige.hpp"
#include "igac/manifold.hpp"
#include "igac/spinchain.hpp"

struct igac_family {
    igac::FamilySpec spec;
};

struct igac_model {
    igac::ManifoldModel model;
};

struct igac_trajectory {
    igac::GeodesicTrajectory traj;
};

struct igac_ige_series {
    igac::IGESeries series;
};

struct igac_spectrum {
    igac::SpectrumRecord record;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_field;

igac_status status_for(igac::ErrorKind kind) {
    using K = igac::ErrorKind;
    switch (kind) {
        case K::domain: return IGAC_ERR_DOMAIN;
        case K::shape: return IGAC_ERR_SHAPE;
        case K::unsupported: return IGAC_ERR_UNSUPPORTED;
        case K::accuracy: return IGAC_ERR_ACCURACY;
        case K::singularity: return IGAC_ERR_SINGULARITY;
        case K::inversion: return IGAC_ERR_INVERSION;
        case K::insufficient_data: return IGAC_ERR_INSUFFICIENT_DATA;
        case K::inapplicable: return IGAC_ERR_INAPPLICABLE;
        case K::fit: return IGAC_ERR_FIT;
        case K::validation: return IGAC_ERR_VALIDATION;
        case K::resource: return IGAC_ERR_RESOURCE;
    }
    return IGAC_ERR_INTERNAL;
}

igac_status fail(igac_status status, std::string message, std::string field = {}) {
    last_message = std::move(message);
    last_field = std::move(field);
    return status;
}

template <class Fn>
igac_status guarded(Fn&& fn) noexcept {
    last_message.clear();
    last_field.clear();
    try {
        return fn();
    } catch (const igac::Error& e) {
        return fail(status_for(e.kind()), e.what(), e.field());
    } catch (const std::bad_alloc&) {
        return fail(IGAC_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(IGAC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(IGAC_ERR_INTERNAL, "unknown error");
    }
}

#define IGAC_REQUIRE(ptr)                                                          \
    do {                                                                           \
        if ((ptr) == nullptr) return fail(IGAC_ERR_ARGUMENT, #ptr " is null", #ptr); \
    } while (0)

igac::Vector to_vector(const double* data, std::size_t n) {
    igac::Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = data[i];
    return v;
}

void write_matrix(const igac::Matrix& m, double* out) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
}

igac_status copy_out(const std::vector<double>& values, double* out, std::size_t len) {
    if (values.empty()) return IGAC_OK;
    IGAC_REQUIRE(out);
    if (len < values.size())
        return fail(IGAC_ERR_ARGUMENT, "output buffer holds " + std::to_string(len) + " values, " +
                                           std::to_string(values.size()) + " needed", "len");
    std::copy(values.begin(), values.end(), out);
    return IGAC_OK;
}

igac_status copy_rows(const std::vector<igac::Vector>& rows, double* out, std::size_t len) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.data(), r.data() + r.size());
    return copy_out(flat, out, len);
}

igac::IntegrateOptions integrate_options(const igac_integrate_options* o) {
    igac::IntegrateOptions opts;
    if (o) {
        opts.tol = o->tol;
        opts.max_step = o->max_step;
        opts.boundary_tol = o->boundary_tol;
        opts.fd_step = o->fd_step > 0.0 ? o->fd_step : igac::kDefaultFdStep;
    }
    return opts;
}

igac::CurvatureOptions curvature_options(const igac_curvature_options* o) {
    igac::CurvatureOptions opts;
    if (o) {
        opts.fd_step = o->fd_step > 0.0 ? o->fd_step : igac::kDefaultFdStep;
        opts.use_overrides = o->use_overrides != 0;
        opts.richardson_check = o->richardson_check != 0;
        opts.richardson_tol = o->richardson_tol;
    }
    return opts;
}

igac::UnfoldOptions unfold_options(const igac_unfold_options* o) {
    igac::UnfoldOptions opts;
    if (o) {
        opts.poly_degree = o->poly_degree;
        opts.trim_fraction = o->trim_fraction;
        opts.max_condition = o->max_condition;
    }
    return opts;
}

igac::LsdOptions lsd_options(const igac_lsd_options* o) {
    igac::LsdOptions opts;
    if (o) {
        opts.margin = o->margin;
        opts.max_ks = o->max_ks;
    }
    return opts;
}

igac::ChainSpec chain_spec(const igac_chain_spec& s) {
    igac::ChainSpec spec;
    spec.n = s.n;
    spec.hx = s.hx;
    spec.hy = s.hy;
    switch (s.sector) {
        case IGAC_SECTOR_FULL: spec.sector = igac::Sector::full; break;
        case IGAC_SECTOR_REFLECTION_EVEN: spec.sector = igac::Sector::reflection_even; break;
        case IGAC_SECTOR_REFLECTION_ODD: spec.sector = igac::Sector::reflection_odd; break;
        default: throw igac::Error(igac::ErrorKind::validation, "unknown sector", "sector");
    }
    return spec;
}

igac_verdict verdict_for(igac::Verdict v) {
    switch (v) {
        case igac::Verdict::poisson_like: return IGAC_VERDICT_POISSON_LIKE;
        case igac::Verdict::wigner_like: return IGAC_VERDICT_WIGNER_LIKE;
        case igac::Verdict::inconclusive: break;
    }
    return IGAC_VERDICT_INCONCLUSIVE;
}

igac_lsd_result lsd_result(const igac::LsdResult& r) { return {r.ks_poisson, r.ks_wigner, verdict_for(r.verdict)}; }

}  // namespace

extern "C" {

const char* igac_version(void) { return "0.1.0"; }

const char* igac_status_name(igac_status status) {
    switch (status) {
        case IGAC_OK: return "ok";
        case IGAC_ERR_ARGUMENT: return "argument";
        case IGAC_ERR_DOMAIN: return "domain";
        case IGAC_ERR_SHAPE: return "shape";
        case IGAC_ERR_UNSUPPORTED: return "unsupported";
        case IGAC_ERR_ACCURACY: return "accuracy";
        case IGAC_ERR_SINGULARITY: return "singularity";
        case IGAC_ERR_INVERSION: return "inversion";
        case IGAC_ERR_INSUFFICIENT_DATA: return "insufficient_data";
        case IGAC_ERR_INAPPLICABLE: return "inapplicable";
        case IGAC_ERR_FIT: return "fit";
        case IGAC_ERR_VALIDATION: return "validation";
        case IGAC_ERR_RESOURCE: return "resource";
        case IGAC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* igac_last_error_message(void) { return last_message.c_str(); }
const char* igac_last_error_field(void) { return last_field.c_str(); }

// ---------------------------------------------------------------- families

igac_status igac_family_create(const char* name, igac_family** out) {
    return guarded([&] {
        IGAC_REQUIRE(name);
        IGAC_REQUIRE(out);
        *out = new igac_family{igac::FamilySpec::parse(name)};
        return IGAC_OK;
    });
}

igac_status igac_family_create_product(const igac_family* const* factors, size_t count, igac_family** out) {
    return guarded([&] {
        IGAC_REQUIRE(factors);
        IGAC_REQUIRE(out);
        std::vector<igac::FamilySpec> specs;
        for (size_t i = 0; i < count; ++i) {
            if (!factors[i]) return fail(IGAC_ERR_ARGUMENT, "null factor", "factors");
            specs.push_back(factors[i]->spec);
        }
        *out = new igac_family{igac::FamilySpec::product(std::move(specs))};
        return IGAC_OK;
    });
}

void igac_family_destroy(igac_family* family) { delete family; }

const char* igac_family_label(const igac_family* family) { return family ? family->spec.label().c_str() : ""; }

size_t igac_family_param_count(const igac_family* family) {
    return family ? static_cast<size_t>(family->spec.param_count()) : 0;
}

size_t igac_family_micro_count(const igac_family* family) {
    return family ? static_cast<size_t>(family->spec.micro_count()) : 0;
}

const char* igac_family_param_name(const igac_family* family, size_t index) {
    if (!family || index >= family->spec.param_names().size()) return nullptr;
    return family->spec.param_names()[index].c_str();
}

igac_status igac_family_density(const igac_family* family, const double* theta, size_t n_theta, const double* x,
                                size_t n_x, double* out) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(x);
        IGAC_REQUIRE(out);
        *out = igac::density(family->spec, to_vector(theta, n_theta), to_vector(x, n_x));
        return IGAC_OK;
    });
}

igac_status igac_family_moments(const igac_family* family, const double* theta, size_t n_theta, double* mean,
                                double* variance, size_t n_micro) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(mean);
        IGAC_REQUIRE(variance);
        const auto m = igac::moments(family->spec, to_vector(theta, n_theta));
        if (n_micro < static_cast<size_t>(m.mean.size())) return fail(IGAC_ERR_ARGUMENT, "buffers too small", "n_micro");
        for (Eigen::Index i = 0; i < m.mean.size(); ++i) {
            mean[i] = m.mean[i];
            variance[i] = m.variance[i];
        }
        return IGAC_OK;
    });
}

igac_status igac_family_sample(const igac_family* family, const double* theta, size_t n_theta, size_t count,
                               uint64_t seed, double* out, size_t out_len) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(theta);
        if (out_len < count * static_cast<size_t>(family->spec.micro_count()))
            return fail(IGAC_ERR_ARGUMENT, "output buffer too small", "out_len");
        return copy_rows(igac::sample(family->spec, to_vector(theta, n_theta), count, seed), out, out_len);
    });
}

void igac_quad_spec_default(igac_quad_spec* spec) {
    if (!spec) return;
    const igac::QuadSpec d;
    *spec = {d.nodes, d.max_nodes, d.tol};
}

igac_status igac_fisher_metric_closed_form(const igac_family* family, const double* theta, size_t n_theta,
                                           double* out) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(out);
        write_matrix(igac::fisher_metric_closed_form(family->spec, to_vector(theta, n_theta)), out);
        return IGAC_OK;
    });
}

igac_status igac_fisher_metric_quadrature(const igac_family* family, const double* theta, size_t n_theta,
                                          const igac_quad_spec* spec, double* out, double* error_estimate, int* nodes) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(out);
        igac::QuadSpec q;
        if (spec) q = {spec->nodes, spec->max_nodes, spec->tol};
        if (q.nodes < 1 || q.max_nodes < q.nodes || !(q.tol > 0.0))
            return fail(IGAC_ERR_VALIDATION, "invalid quadrature settings", "quad_spec");
        const auto result = igac::fisher_metric_quadrature(family->spec, to_vector(theta, n_theta), q);
        write_matrix(result.metric, out);
        if (error_estimate) *error_estimate = result.error_estimate;
        if (nodes) *nodes = result.nodes;
        return IGAC_OK;
    });
}

// --------------------------------------------------------------- manifolds

igac_status igac_model_create(const char* name, igac_model** out) {
    return guarded([&] {
        IGAC_REQUIRE(name);
        IGAC_REQUIRE(out);
        *out = new igac_model{igac::model_by_name(name)};
        return IGAC_OK;
    });
}

igac_status igac_model_from_family(const igac_family* family, igac_model** out) {
    return guarded([&] {
        IGAC_REQUIRE(family);
        IGAC_REQUIRE(out);
        *out = new igac_model{igac::model_from_family(family->spec)};
        return IGAC_OK;
    });
}

igac_status igac_model_generic(const igac_model* model, igac_model** out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(out);
        *out = new igac_model{model->model.generic()};
        return IGAC_OK;
    });
}

void igac_model_destroy(igac_model* model) { delete model; }

const char* igac_model_name(const igac_model* model) { return model ? model->model.name().c_str() : ""; }

size_t igac_model_dim(const igac_model* model) { return model ? static_cast<size_t>(model->model.dim()) : 0; }

const char* igac_model_coord_name(const igac_model* model, size_t index) {
    if (!model || index >= model->model.coord_names().size()) return nullptr;
    return model->model.coord_names()[index].c_str();
}

igac_status igac_model_metric(const igac_model* model, const double* theta, size_t n, double* out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(out);
        write_matrix(model->model.metric(to_vector(theta, n)), out);
        return IGAC_OK;
    });
}

igac_status igac_line_element(const igac_model* model, const double* theta, const double* dtheta, size_t n,
                              double* out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(dtheta);
        IGAC_REQUIRE(out);
        *out = igac::line_element(model->model, to_vector(theta, n), to_vector(dtheta, n));
        return IGAC_OK;
    });
}

// ---------------------------------------------------------------- geometry

igac_status igac_christoffel(const igac_model* model, const double* theta, size_t n, double fd_step, double* out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(out);
        const auto gamma =
            igac::christoffel(model->model, to_vector(theta, n), fd_step > 0.0 ? fd_step : igac::kDefaultFdStep);
        std::copy(gamma.data().begin(), gamma.data().end(), out);
        return IGAC_OK;
    });
}

void igac_curvature_options_default(igac_curvature_options* options) {
    if (!options) return;
    const igac::CurvatureOptions d;
    *options = {d.fd_step, d.use_overrides ? 1 : 0, d.richardson_check ? 1 : 0, d.richardson_tol};
}

igac_status igac_curvature(const igac_model* model, const double* theta, size_t n,
                           const igac_curvature_options* options, igac_curvature_summary* summary, double* riemann,
                           double* ricci, double* sectional) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(theta);
        IGAC_REQUIRE(summary);
        const auto report = igac::curvature(model->model, to_vector(theta, n), curvature_options(options));
        *summary = {report.scalar, report.scalar_half_step, report.richardson_delta, report.sectional_sum()};
        if (riemann) std::copy(report.riemann.data().begin(), report.riemann.data().end(), riemann);
        if (ricci) write_matrix(report.ricci, ricci);
        if (sectional) write_matrix(report.sectional, sectional);
        return IGAC_OK;
    });
}

const char* igac_scalar_sign_name(igac_scalar_sign sign) {
    switch (sign) {
        case IGAC_SIGN_NEGATIVE: return igac::to_string(igac::ScalarSign::negative);
        case IGAC_SIGN_NON_NEGATIVE: return igac::to_string(igac::ScalarSign::non_negative);
        case IGAC_SIGN_MIXED: return igac::to_string(igac::ScalarSign::mixed);
    }
    return "unknown";
}

igac_status igac_scalar_sign_classification(const igac_model* model, const double* points, size_t count, size_t n,
                                            const igac_curvature_options* options, double zero_tol,
                                            igac_scalar_sign* sign, double* min_scalar, double* max_scalar) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(points);
        IGAC_REQUIRE(sign);
        std::vector<igac::Vector> pts;
        for (size_t i = 0; i < count; ++i) pts.push_back(to_vector(points + i * n, n));
        const auto s = igac::scalar_sign_classification(model->model, pts, curvature_options(options), zero_tol);
        *sign = s.sign == igac::ScalarSign::negative       ? IGAC_SIGN_NEGATIVE
                : s.sign == igac::ScalarSign::non_negative ? IGAC_SIGN_NON_NEGATIVE
                                                           : IGAC_SIGN_MIXED;
        if (min_scalar) *min_scalar = s.min_scalar;
        if (max_scalar) *max_scalar = s.max_scalar;
        return IGAC_OK;
    });
}

// ---------------------------------------------------------------- dynamics

void igac_integrate_options_default(igac_integrate_options* options) {
    if (!options) return;
    const igac::IntegrateOptions d;
    *options = {d.tol, d.max_step, d.boundary_tol, d.fd_step};
}

igac_status igac_integrate_geodesic(const igac_model* model, const double* theta0, const double* v0, size_t n,
                                    double tau_max, const igac_integrate_options* options, igac_trajectory** out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(theta0);
        IGAC_REQUIRE(v0);
        IGAC_REQUIRE(out);
        *out = new igac_trajectory{igac::integrate_geodesic(model->model, to_vector(theta0, n), to_vector(v0, n),
                                                            tau_max, integrate_options(options))};
        return IGAC_OK;
    });
}

igac_status igac_integrate_jacobi(const igac_model* model, const igac_trajectory* geodesic, const double* j0,
                                  const double* dj0, size_t n, const igac_integrate_options* options,
                                  igac_trajectory** out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(geodesic);
        IGAC_REQUIRE(j0);
        IGAC_REQUIRE(dj0);
        IGAC_REQUIRE(out);
        *out = new igac_trajectory{igac::integrate_jacobi(model->model, geodesic->traj, to_vector(j0, n),
                                                          to_vector(dj0, n), integrate_options(options))};
        return IGAC_OK;
    });
}

void igac_trajectory_destroy(igac_trajectory* traj) { delete traj; }

size_t igac_trajectory_size(const igac_trajectory* traj) { return traj ? traj->traj.size() : 0; }

size_t igac_trajectory_dim(const igac_trajectory* traj) {
    return traj ? static_cast<size_t>(traj->traj.dim()) : 0;
}

int igac_trajectory_has_jacobi(const igac_trajectory* traj) { return traj && traj->traj.has_jacobi() ? 1 : 0; }

int igac_trajectory_hit_boundary(const igac_trajectory* traj) {
    return traj && traj->traj.termination == igac::Termination::boundary ? 1 : 0;
}

const char* igac_trajectory_boundary_coordinate(const igac_trajectory* traj) {
    return traj ? traj->traj.boundary_coordinate.c_str() : "";
}

igac_status igac_trajectory_tau(const igac_trajectory* traj, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        return copy_out(traj->traj.tau, out, len);
    });
}

igac_status igac_trajectory_coords(const igac_trajectory* traj, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        return copy_rows(traj->traj.coords, out, len);
    });
}

igac_status igac_trajectory_velocity(const igac_trajectory* traj, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        return copy_rows(traj->traj.velocity, out, len);
    });
}

igac_status igac_trajectory_speed(const igac_trajectory* traj, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        return copy_out(traj->traj.speed, out, len);
    });
}

igac_status igac_trajectory_jacobi_norm(const igac_trajectory* traj, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        if (!traj->traj.has_jacobi()) return fail(IGAC_ERR_VALIDATION, "trajectory carries no Jacobi field", "traj");
        return copy_out(traj->traj.jacobi_norm, out, len);
    });
}

igac_status igac_estimate_lambda_j(const igac_trajectory* traj, double w0, double w1, double* lambda_j, double* r2) {
    return guarded([&] {
        IGAC_REQUIRE(traj);
        IGAC_REQUIRE(lambda_j);
        const auto est = igac::estimate_lambda_j(traj->traj, w0, w1);
        *lambda_j = est.lambda_j;
        if (r2) *r2 = est.r2;
        return IGAC_OK;
    });
}

// --------------------------------------------------------------------- IGE

igac_status igac_volume_series(const igac_model* model, const igac_trajectory* traj, int quad_nodes,
                               igac_ige_series** out) {
    return guarded([&] {
        IGAC_REQUIRE(model);
        IGAC_REQUIRE(traj);
        IGAC_REQUIRE(out);
        *out = new igac_ige_series{igac::volume_series(model->model, traj->traj, quad_nodes)};
        return IGAC_OK;
    });
}

igac_status igac_ige_series_from_entropy(const double* tau, const double* entropy, size_t n, igac_ige_series** out) {
    return guarded([&] {
        IGAC_REQUIRE(tau);
        IGAC_REQUIRE(entropy);
        IGAC_REQUIRE(out);
        *out = new igac_ige_series{
            igac::IGESeries::from_entropy(std::vector<double>(tau, tau + n), std::vector<double>(entropy, entropy + n))};
        return IGAC_OK;
    });
}

void igac_ige_series_destroy(igac_ige_series* series) { delete series; }

size_t igac_ige_series_size(const igac_ige_series* series) { return series ? series->series.size() : 0; }

int igac_ige_series_is_degenerate(const igac_ige_series* series) {
    return series && series->series.degenerate ? 1 : 0;
}

igac_status igac_ige_series_tau(const igac_ige_series* series, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(series);
        return copy_out(series->series.tau, out, len);
    });
}

igac_status igac_ige_series_volume(const igac_ige_series* series, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(series);
        return copy_out(series->series.volume, out, len);
    });
}

igac_status igac_ige_series_entropy(const igac_ige_series* series, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(series);
        return copy_out(series->series.entropy, out, len);
    });
}

const char* igac_growth_model_name(igac_growth_model model) {
    return model == IGAC_GROWTH_LINEAR ? igac::to_string(igac::GrowthModel::linear)
                                       : igac::to_string(igac::GrowthModel::logarithmic);
}

igac_status igac_fit_growth(const igac_ige_series* series, double w0, double w1, igac_fit_report* out) {
    return guarded([&] {
        IGAC_REQUIRE(series);
        IGAC_REQUIRE(out);
        const auto r = igac::fit_growth(series->series, w0, w1);
        out->selected = r.selected == igac::GrowthModel::linear ? IGAC_GROWTH_LINEAR : IGAC_GROWTH_LOGARITHMIC;
        out->c_ig = r.c_ig;
        out->c_ig_prime = r.c_ig_prime;
        out->k_ig = r.k_ig;
        out->log_c_ig = r.log_c_ig;
        out->r2_log = r.r2_log;
        out->r2_linear = r.r2_linear;
        out->aic_log = r.aic_log;
        out->aic_linear = r.aic_linear;
        out->window_lo = r.window_lo;
        out->window_hi = r.window_hi;
        out->samples = r.samples;
        return IGAC_OK;
    });
}

igac_status igac_compare_rates(const igac_fit_report* fit, double lambda_j, igac_rate_comparison* out) {
    return guarded([&] {
        IGAC_REQUIRE(fit);
        IGAC_REQUIRE(out);
        igac::FitReport r;
        r.selected = fit->selected == IGAC_GROWTH_LINEAR ? igac::GrowthModel::linear : igac::GrowthModel::logarithmic;
        r.k_ig = fit->k_ig;
        const auto c = igac::compare_rates(r, lambda_j);
        *out = {c.k_ig, c.lambda_j, c.ratio, c.abs_diff, c.consistent ? 1 : 0};
        return IGAC_OK;
    });
}

// -------------------------------------------------------------- spin chain

const char* igac_sector_name(igac_sector sector) {
    switch (sector) {
        case IGAC_SECTOR_FULL: return igac::to_string(igac::Sector::full);
        case IGAC_SECTOR_REFLECTION_EVEN: return igac::to_string(igac::Sector::reflection_even);
        case IGAC_SECTOR_REFLECTION_ODD: return igac::to_string(igac::Sector::reflection_odd);
    }
    return "unknown";
}

int igac_max_spins(void) { return igac::configured_max_spins(); }

igac_status igac_chain_dimension(const igac_chain_spec* spec, size_t* out) {
    return guarded([&] {
        IGAC_REQUIRE(spec);
        IGAC_REQUIRE(out);
        *out = igac::sector_dimension(chain_spec(*spec));
        return IGAC_OK;
    });
}

igac_status igac_build_hamiltonian(const igac_chain_spec* spec, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(spec);
        IGAC_REQUIRE(out);
        const auto H = igac::build_hamiltonian(chain_spec(*spec));
        const auto dim = static_cast<size_t>(H.rows());
        if (len < 2 * dim * dim) return fail(IGAC_ERR_ARGUMENT, "output buffer too small", "len");
        for (Eigen::Index r = 0; r < H.rows(); ++r)
            for (Eigen::Index c = 0; c < H.cols(); ++c) {
                const auto k = 2 * (static_cast<size_t>(r) * dim + static_cast<size_t>(c));
                out[k] = H(r, c).real();
                out[k + 1] = H(r, c).imag();
            }
        return IGAC_OK;
    });
}

igac_status igac_diagonalize(const double* h, size_t dim, double* eigenvalues) {
    return guarded([&] {
        IGAC_REQUIRE(h);
        IGAC_REQUIRE(eigenvalues);
        const auto d = static_cast<Eigen::Index>(dim);
        igac::ComplexMatrix H(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) {
                const auto k = 2 * (static_cast<size_t>(r) * dim + static_cast<size_t>(c));
                H(r, c) = {h[k], h[k + 1]};
            }
        const auto ev = igac::diagonalize(H);
        std::copy(ev.begin(), ev.end(), eigenvalues);
        return IGAC_OK;
    });
}

void igac_unfold_options_default(igac_unfold_options* options) {
    if (!options) return;
    const igac::UnfoldOptions d;
    *options = {d.poly_degree, d.trim_fraction, d.max_condition};
}

igac_status igac_unfold(const double* eigenvalues, size_t n, const igac_unfold_options* options, double* out,
                        size_t capacity, size_t* count) {
    return guarded([&] {
        IGAC_REQUIRE(eigenvalues);
        IGAC_REQUIRE(count);
        const auto spacings = igac::unfold(std::vector<double>(eigenvalues, eigenvalues + n), unfold_options(options));
        *count = spacings.size();
        return copy_out(spacings, out, capacity);
    });
}

const char* igac_verdict_name(igac_verdict verdict) {
    switch (verdict) {
        case IGAC_VERDICT_POISSON_LIKE: return igac::to_string(igac::Verdict::poisson_like);
        case IGAC_VERDICT_WIGNER_LIKE: return igac::to_string(igac::Verdict::wigner_like);
        case IGAC_VERDICT_INCONCLUSIVE: return igac::to_string(igac::Verdict::inconclusive);
    }
    return "unknown";
}

void igac_lsd_options_default(igac_lsd_options* options) {
    if (!options) return;
    const igac::LsdOptions d;
    *options = {d.margin, d.max_ks};
}

igac_status igac_lsd_verdict(const double* spacings, size_t n, const igac_lsd_options* options,
                             igac_lsd_result* out) {
    return guarded([&] {
        IGAC_REQUIRE(spacings);
        IGAC_REQUIRE(out);
        *out = lsd_result(igac::lsd_verdict(std::vector<double>(spacings, spacings + n), lsd_options(options)));
        return IGAC_OK;
    });
}

igac_status igac_spacing_histogram(const double* spacings, size_t n, int bins, double* edges, double* density,
                                   double* poisson_ref, double* wigner_ref) {
    return guarded([&] {
        IGAC_REQUIRE(spacings);
        const auto h = igac::spacing_histogram(std::vector<double>(spacings, spacings + n), bins);
        if (edges) std::copy(h.edges.begin(), h.edges.end(), edges);
        if (density) std::copy(h.density.begin(), h.density.end(), density);
        if (poisson_ref) std::copy(h.poisson_ref.begin(), h.poisson_ref.end(), poisson_ref);
        if (wigner_ref) std::copy(h.wigner_ref.begin(), h.wigner_ref.end(), wigner_ref);
        return IGAC_OK;
    });
}

igac_status igac_analyze_chain(const igac_chain_spec* spec, const igac_unfold_options* unfold_opts,
                               const igac_lsd_options* lsd_opts, igac_spectrum** out) {
    return guarded([&] {
        IGAC_REQUIRE(spec);
        IGAC_REQUIRE(out);
        *out = new igac_spectrum{
            igac::analyze_chain(chain_spec(*spec), unfold_options(unfold_opts), lsd_options(lsd_opts))};
        return IGAC_OK;
    });
}

void igac_spectrum_destroy(igac_spectrum* spectrum) { delete spectrum; }

size_t igac_spectrum_eigenvalue_count(const igac_spectrum* spectrum) {
    return spectrum ? spectrum->record.eigenvalues.size() : 0;
}

size_t igac_spectrum_spacing_count(const igac_spectrum* spectrum) {
    return spectrum ? spectrum->record.unfolded_spacings.size() : 0;
}

igac_status igac_spectrum_eigenvalues(const igac_spectrum* spectrum, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(spectrum);
        return copy_out(spectrum->record.eigenvalues, out, len);
    });
}

igac_status igac_spectrum_spacings(const igac_spectrum* spectrum, double* out, size_t len) {
    return guarded([&] {
        IGAC_REQUIRE(spectrum);
        return copy_out(spectrum->record.unfolded_spacings, out, len);
    });
}

igac_status igac_spectrum_lsd(const igac_spectrum* spectrum, igac_lsd_result* out) {
    return guarded([&] {
        IGAC_REQUIRE(spectrum);
        IGAC_REQUIRE(out);
        *out = lsd_result(spectrum->record.lsd);
        return IGAC_OK;
    });
}

}  // extern "C"
