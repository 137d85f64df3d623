#include "igac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "igac/error.hpp"

namespace igac {

Vector fd_steps(const Vector& theta, double fd_step) {
    if (!(fd_step > 0.0)) throw Error(ErrorKind::validation, "fd_step must be positive", "fd_step");
    Vector h(theta.size());
    for (int i = 0; i < theta.size(); ++i) h[i] = fd_step * std::max(1.0, std::abs(theta[i]));
    return h;
}

Matrix inverse_metric(const Matrix& g) {
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::inversion, "metric is not positive definite");
    return llt.solve(Matrix::Identity(g.rows(), g.cols()));
}

namespace {

void require_interior(const ManifoldModel& model, const Vector& theta, const Vector& h, double reach) {
    model.validate(theta);
    for (int i = 0; i < model.dim(); ++i) {
        const auto& dom = model.domain()[static_cast<std::size_t>(i)];
        if (!dom.contains(theta[i] - reach * h[i]) || !dom.contains(theta[i] + reach * h[i]))
            throw Error(ErrorKind::domain,
                        model.name() + ": coordinate " + model.coord_names()[static_cast<std::size_t>(i)] +
                            " is within the finite-difference stencil of the domain edge",
                        model.coord_names()[static_cast<std::size_t>(i)]);
    }
}

// dg[λ](μ, ν) = ∂_λ g_μν
std::vector<Matrix> metric_derivatives(const ManifoldModel& model, const Vector& theta, const Vector& h) {
    std::vector<Matrix> dg;
    for (int l = 0; l < model.dim(); ++l) {
        Vector up = theta;
        Vector down = theta;
        up[l] += h[l];
        down[l] -= h[l];
        dg.push_back((model.metric(up) - model.metric(down)) / (2.0 * h[l]));
    }
    return dg;
}

Christoffel christoffel_from_metric(const ManifoldModel& model, const Vector& theta, const Vector& h) {
    const int d = model.dim();
    const Matrix ginv = inverse_metric(model.metric(theta));
    const auto dg = metric_derivatives(model, theta, h);
    Christoffel gamma(d);
    for (int r = 0; r < d; ++r)
        for (int m = 0; m < d; ++m)
            for (int n = m; n < d; ++n) {
                double sum = 0.0;
                for (int l = 0; l < d; ++l)
                    sum += ginv(r, l) * (dg[static_cast<std::size_t>(m)](l, n) + dg[static_cast<std::size_t>(n)](l, m) -
                                         dg[static_cast<std::size_t>(l)](m, n));
                gamma(r, m, n) = gamma(r, n, m) = 0.5 * sum;
            }
    return gamma;
}

Christoffel connection(const ManifoldModel& model, const Vector& theta, double fd_step, bool use_override) {
    if (use_override && model.christoffel_override()) {
        model.validate(theta);
        return (*model.christoffel_override())(theta);
    }
    const Vector h = fd_steps(theta, fd_step);
    require_interior(model, theta, h, 1.0);
    return christoffel_from_metric(model, theta, h);
}

}  // namespace

Christoffel christoffel(const ManifoldModel& model, const Vector& theta, double fd_step) {
    return connection(model, theta, fd_step, true);
}

Christoffel christoffel_fd(const ManifoldModel& model, const Vector& theta, double fd_step) {
    return connection(model, theta, fd_step, false);
}

Riemann riemann_from_connection(const ManifoldModel& model, const Vector& theta, double fd_step, bool use_override) {
    const int d = model.dim();
    const Vector h = fd_steps(theta, fd_step);
    const bool closed = use_override && model.christoffel_override().has_value();
    require_interior(model, theta, h, closed ? 1.0 : 2.0);

    const Christoffel gamma = connection(model, theta, fd_step, use_override);
    // dgamma[μ] = ∂_μ Γ
    std::vector<Christoffel> dgamma;
    for (int m = 0; m < d; ++m) {
        Vector up = theta;
        Vector down = theta;
        up[m] += h[m];
        down[m] -= h[m];
        // Inner stencils reuse the outer step sizes so the two levels stay nested.
        const Christoffel gu = closed ? (*model.christoffel_override())(up) : christoffel_from_metric(model, up, h);
        const Christoffel gd = closed ? (*model.christoffel_override())(down) : christoffel_from_metric(model, down, h);
        Christoffel diff(d);
        for (int r = 0; r < d; ++r)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) diff(r, a, b) = (gu(r, a, b) - gd(r, a, b)) / (2.0 * h[m]);
        dgamma.push_back(std::move(diff));
    }

    Riemann R(d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) {
                    if (m == n) continue;
                    double value = dgamma[static_cast<std::size_t>(m)](r, n, s) -
                                   dgamma[static_cast<std::size_t>(n)](r, m, s);
                    for (int l = 0; l < d; ++l)
                        value += gamma(r, m, l) * gamma(l, n, s) - gamma(r, n, l) * gamma(l, m, s);
                    R(r, s, m, n) = value;
                }
    return R;
}

Riemann riemann(const ManifoldModel& model, const Vector& theta, double fd_step) {
    if (model.riemann_override()) {
        model.validate(theta);
        return (*model.riemann_override())(theta);
    }
    return riemann_from_connection(model, theta, fd_step, true);
}

double sectional_curvature(const Riemann& R, const Matrix& g, const Vector& u, const Vector& v) {
    const int d = R.dim();
    double num = 0.0;
    for (int l = 0; l < d; ++l)
        for (int s = 0; s < d; ++s)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) {
                    double lowered = 0.0;  // R_lsmn = g_lr R^r_smn
                    for (int r = 0; r < d; ++r) lowered += g(l, r) * R(r, s, m, n);
                    num += lowered * u[l] * v[s] * u[m] * v[n];
                }
    const double uu = u.dot(g * u);
    const double vv = v.dot(g * v);
    const double uv = u.dot(g * v);
    const double area = uu * vv - uv * uv;
    if (!(area > 0.0)) throw Error(ErrorKind::validation, "sectional_curvature: vectors span no plane");
    return num / area;
}

double CurvatureReport::sectional_sum() const {
    double sum = 0.0;
    for (int i = 0; i < sectional.rows(); ++i)
        for (int j = 0; j < sectional.cols(); ++j)
            if (i != j) sum += sectional(i, j);
    return sum;
}

namespace {

struct Contracted {
    Matrix ricci;
    double scalar;
};

Contracted contract(const Riemann& R, const Matrix& ginv) {
    const int d = R.dim();
    Matrix ricci = Matrix::Zero(d, d);
    for (int s = 0; s < d; ++s)
        for (int n = 0; n < d; ++n)
            for (int r = 0; r < d; ++r) ricci(s, n) += R(r, s, r, n);
    double scalar = 0.0;
    for (int s = 0; s < d; ++s)
        for (int n = 0; n < d; ++n) scalar += ginv(s, n) * ricci(s, n);
    return {ricci, scalar};
}

Matrix orthonormal_frame(const Matrix& g) {
    const int d = static_cast<int>(g.rows());
    Matrix frame = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i) {
        Vector e = frame.col(i);
        for (int j = 0; j < i; ++j) e -= frame.col(j).dot(g * e) * frame.col(j);
        frame.col(i) = e / std::sqrt(e.dot(g * e));
    }
    return frame;
}

}  // namespace

CurvatureReport curvature(const ManifoldModel& model, const Vector& theta, const CurvatureOptions& options) {
    CurvatureReport report;
    report.point = theta;
    const Matrix g = model.metric(theta);
    const Matrix ginv = inverse_metric(g);
    report.christoffel = connection(model, theta, options.fd_step, options.use_overrides);
    report.riemann = riemann_from_connection(model, theta, options.fd_step, options.use_overrides);
    auto [ricci, scalar] = contract(report.riemann, ginv);
    report.ricci = std::move(ricci);
    report.scalar = scalar;

    const int d = model.dim();
    report.frame = orthonormal_frame(g);
    report.sectional = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            report.sectional(i, j) = report.sectional(j, i) =
                sectional_curvature(report.riemann, g, report.frame.col(i), report.frame.col(j));

    report.scalar_half_step = std::numeric_limits<double>::quiet_NaN();
    if (options.richardson_check) {
        const Riemann half = riemann_from_connection(model, theta, 0.5 * options.fd_step, options.use_overrides);
        report.scalar_half_step = contract(half, ginv).scalar;
        report.richardson_delta = std::abs(report.scalar - report.scalar_half_step);
        if (report.richardson_delta > options.richardson_tol * std::max(1.0, std::abs(report.scalar)))
            throw AccuracyError(model.name() + ": scalar curvature is not stable under fd_step halving",
                                report.scalar, report.scalar_half_step);
    }
    return report;
}

const char* to_string(ScalarSign sign) {
    switch (sign) {
        case ScalarSign::negative: return "negative";
        case ScalarSign::non_negative: return "non-negative";
        case ScalarSign::mixed: return "mixed";
    }
    return "unknown";
}

SignSummary scalar_sign_classification(const ManifoldModel& model, const std::vector<Vector>& points,
                                       const CurvatureOptions& options, double zero_tol) {
    if (points.empty()) throw Error(ErrorKind::insufficient_data, "no sample points");
    SignSummary out;
    out.points = points.size();
    out.min_scalar = kInf;
    out.max_scalar = -kInf;
    bool any_negative = false;
    bool any_non_negative = false;
    for (const auto& p : points) {
        const double R = curvature(model, p, options).scalar;
        out.min_scalar = std::min(out.min_scalar, R);
        out.max_scalar = std::max(out.max_scalar, R);
        if (R < -zero_tol)
            any_negative = true;
        else
            any_non_negative = true;
    }
    out.sign = any_negative && any_non_negative ? ScalarSign::mixed
               : any_negative                   ? ScalarSign::negative
                                                : ScalarSign::non_negative;
    return out;
}

double bianchi_residual(const Riemann& R) {
    const int d = R.dim();
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    worst = std::max(worst, std::abs(R(a, b, c, e) + R(a, c, e, b) + R(a, e, b, c)));
    return worst;
}

double antisymmetry_residual(const Riemann& R) {
    const int d = R.dim();
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) worst = std::max(worst, std::abs(R(a, b, c, e) + R(a, b, e, c)));
    return worst;
}

double metric_compatibility_residual(const ManifoldModel& model, const Vector& theta, double fd_step) {
    const int d = model.dim();
    const Vector h = fd_steps(theta, fd_step);
    require_interior(model, theta, h, 1.0);
    const Matrix g = model.metric(theta);
    // Richardson-combined central differences, fourth order in h.
    auto dg = metric_derivatives(model, theta, h / 2);
    const auto coarse = metric_derivatives(model, theta, h);
    for (std::size_t l = 0; l < dg.size(); ++l) dg[l] = (4.0 * dg[l] - coarse[l]) / 3.0;
    const Christoffel gamma = christoffel(model, theta, fd_step);
    double scale = 1.0;
    for (const auto& m : dg) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) {
                double value = dg[static_cast<std::size_t>(l)](m, n);
                for (int r = 0; r < d; ++r) value -= gamma(r, l, m) * g(r, n) + gamma(r, l, n) * g(m, r);
                worst = std::max(worst, std::abs(value));
            }
    return worst / scale;
}

}  // namespace igac
