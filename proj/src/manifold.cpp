#include "igac/manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "igac/error.hpp"

namespace igac {

ManifoldModel::ManifoldModel(std::string name, std::vector<std::string> coord_names, std::vector<Interval> domain,
                             MetricFn metric)
    : name_(std::move(name)), coord_names_(std::move(coord_names)), domain_(std::move(domain)),
      metric_(std::move(metric)) {
    if (coord_names_.empty() || coord_names_.size() != domain_.size())
        throw Error(ErrorKind::shape, "manifold '" + name_ + "': coordinate names and domain disagree");
}

bool ManifoldModel::contains(const Vector& theta) const {
    if (theta.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (!domain_[static_cast<std::size_t>(i)].contains(theta[i])) return false;
    return true;
}

void ManifoldModel::validate(const Vector& theta) const {
    if (theta.size() != dim()) {
        std::ostringstream msg;
        msg << name_ << ": expected " << dim() << " coordinates, got " << theta.size();
        throw Error(ErrorKind::shape, msg.str(), "theta");
    }
    for (int i = 0; i < dim(); ++i) {
        const auto& dom = domain_[static_cast<std::size_t>(i)];
        if (!dom.contains(theta[i])) {
            const auto& coord = coord_names_[static_cast<std::size_t>(i)];
            std::ostringstream msg;
            msg << name_ << ": coordinate " << coord << " = " << theta[i] << " outside (" << dom.lo << ", "
                << dom.hi << ")";
            throw Error(ErrorKind::domain, msg.str(), coord);
        }
    }
}

Matrix ManifoldModel::metric(const Vector& theta) const {
    validate(theta);
    return metric_(theta);
}

ManifoldModel ManifoldModel::with_christoffel(ChristoffelFn fn) const {
    ManifoldModel copy = *this;
    copy.christoffel_ = std::move(fn);
    return copy;
}

ManifoldModel ManifoldModel::with_riemann(RiemannFn fn) const {
    ManifoldModel copy = *this;
    copy.riemann_ = std::move(fn);
    return copy;
}

ManifoldModel ManifoldModel::with_volume_factors(std::vector<DensityFactor> factors) const {
    if (static_cast<int>(factors.size()) != dim())
        throw Error(ErrorKind::shape, name_ + ": one volume factor per coordinate required");
    ManifoldModel copy = *this;
    copy.volume_factors_ = std::move(factors);
    return copy;
}

ManifoldModel ManifoldModel::generic() const {
    return ManifoldModel(name_, coord_names_, domain_, metric_);
}

// ---------------------------------------------------------------------------
// Closed forms per univariate family.

namespace {

struct Block {
    Matrix metric;
    Christoffel gamma;
    Riemann riemann;
    std::vector<DensityFactor> volume;
};

Block block_closed_form(const FamilySpec& family, const Vector& theta) {
    switch (family.name()) {
        case FamilyName::exponential:
        case FamilyName::poisson_spacing:
        case FamilyName::wigner_dyson: {
            // 1/mu² for the exponential law, 4/mu² for Wigner-Dyson.
            const double c = family.name() == FamilyName::wigner_dyson ? 4.0 : 1.0;
            const double mu = theta[0];
            Block b{Matrix::Constant(1, 1, c / (mu * mu)), Christoffel(1), Riemann(1), {}};
            b.gamma(0, 0, 0) = -1.0 / mu;
            const double root = std::sqrt(c);
            b.volume = {[root](double m) { return root / m; }};
            return b;
        }
        case FamilyName::gaussian: {
            const double sigma = theta[1];
            const double s2 = sigma * sigma;
            Block b{Matrix::Zero(2, 2), Christoffel(2), Riemann(2), {}};
            b.metric(0, 0) = 1.0 / s2;
            b.metric(1, 1) = 2.0 / s2;
            b.gamma(0, 0, 1) = b.gamma(0, 1, 0) = -1.0 / sigma;
            b.gamma(1, 0, 0) = 1.0 / (2.0 * sigma);
            b.gamma(1, 1, 1) = -1.0 / sigma;
            // Constant sectional curvature -1/2: R^a_bcd = K (δ^a_c g_bd - δ^a_d g_bc).
            constexpr double K = -0.5;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    for (int c = 0; c < 2; ++c)
                        for (int d = 0; d < 2; ++d)
                            b.riemann(a, bb, c, d) =
                                K * ((a == c ? b.metric(bb, d) : 0.0) - (a == d ? b.metric(bb, c) : 0.0));
            b.volume = {[](double) { return 1.0; },
                        [](double s) { return std::numbers::sqrt2 / (s * s); }};
            return b;
        }
        default: break;
    }
    throw Error(ErrorKind::unsupported, "no closed-form Fisher metric for " + family.label(), "family");
}

std::vector<FamilySpec> factors_of(const FamilySpec& family) {
    if (family.is_composite()) return family.factors();
    return {family};
}

template <class Fn>
void for_each_block(const FamilySpec& family, const Vector& theta, Fn&& fn) {
    int offset = 0;
    for (const auto& factor : factors_of(family)) {
        const int k = factor.param_count();
        fn(block_closed_form(factor, theta.segment(offset, k)), offset, k);
        offset += k;
    }
}

// Scale for the quadrature map of each microvariable.
std::vector<MappedAxis> axes_for(const FamilySpec& family, const ParamPoint& theta) {
    const auto m = moments(family, theta);
    std::vector<MappedAxis> axes;
    for (int i = 0; i < family.micro_count(); ++i) {
        MappedAxis axis;
        axis.support = family.micro_support()[static_cast<std::size_t>(i)];
        axis.center = m.mean[i];
        axis.scale = std::sqrt(m.variance[i]);
        if (axis.support.bounded_below() && !axis.support.bounded_above()) axis.scale = m.mean[i] - axis.support.lo;
        axes.push_back(axis);
    }
    return axes;
}

template <class Estimate>
QuadratureMetric refine(const QuadSpec& spec, Estimate&& estimate, const char* what) {
    int n = spec.nodes;
    Matrix previous = estimate(n);
    Matrix older = previous;
    while (2 * n <= spec.max_nodes) {
        n *= 2;
        Matrix current = estimate(n);
        const double diff = (current - previous).norm();
        if (diff <= spec.tol * std::max(1.0, current.norm())) return QuadratureMetric{current, diff, n};
        older = std::move(previous);
        previous = std::move(current);
    }
    throw AccuracyError(std::string(what) + ": quadrature did not converge by " + std::to_string(n) + " nodes",
                        older.norm(), previous.norm());
}

}  // namespace

Matrix fisher_metric_closed_form(const FamilySpec& family, const ParamPoint& theta) {
    family.validate(theta);
    Matrix g = Matrix::Zero(family.param_count(), family.param_count());
    for_each_block(family, theta, [&](const Block& b, int offset, int k) { g.block(offset, offset, k, k) = b.metric; });
    return g;
}

QuadratureMetric fisher_metric_quadrature(const FamilySpec& family, const ParamPoint& theta, const QuadSpec& spec) {
    family.validate(theta);
    const int p = family.param_count();
    std::vector<double> step(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        double h = 1e-5 * std::max(1.0, std::abs(theta[i]));
        const auto& dom = family.param_domain()[static_cast<std::size_t>(i)];
        if (dom.bounded_below()) h = std::min(h, 0.5 * (theta[i] - dom.lo));
        if (dom.bounded_above()) h = std::min(h, 0.5 * (dom.hi - theta[i]));
        step[static_cast<std::size_t>(i)] = h;
    }
    const auto axes = axes_for(family, theta);

    auto estimate = [&](int n) {
        const auto width = p * p;
        std::vector<double> shifted(theta.data(), theta.data() + p);
        std::vector<double> score(static_cast<std::size_t>(p));
        const auto total = integrate_product(axes, n, width, [&](const std::vector<double>& x, double* out) {
            const double lp = log_density_unchecked(family, theta.data(), x.data());
            if (!std::isfinite(lp)) return;
            const double pdf = std::exp(lp);
            if (pdf == 0.0) return;
            for (int i = 0; i < p; ++i) {
                const auto k = static_cast<std::size_t>(i);
                shifted[k] = theta[i] + step[k];
                const double up = log_density_unchecked(family, shifted.data(), x.data());
                shifted[k] = theta[i] - step[k];
                const double down = log_density_unchecked(family, shifted.data(), x.data());
                shifted[k] = theta[i];
                score[k] = (up - down) / (2.0 * step[k]);
            }
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    out[a * p + b] = pdf * score[static_cast<std::size_t>(a)] * score[static_cast<std::size_t>(b)];
        });
        Matrix g(p, p);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) g(a, b) = total[static_cast<std::size_t>(a * p + b)];
        return Matrix(0.5 * (g + g.transpose()));
    };
    return refine(spec, estimate, "fisher_metric_quadrature");
}

double normalization(const FamilySpec& family, const ParamPoint& theta, const QuadSpec& spec) {
    family.validate(theta);
    const auto axes = axes_for(family, theta);
    auto estimate = [&](int n) {
        Vector x(family.micro_count());
        return Matrix::Constant(1, 1, integrate_product(axes, n, [&](const std::vector<double>& pt) {
                                    for (int i = 0; i < x.size(); ++i) x[i] = pt[static_cast<std::size_t>(i)];
                                    return density(family, theta, x);
                                }));
    };
    return refine(spec, estimate, "normalization").metric(0, 0);
}

ManifoldModel model_from_family(const FamilySpec& family, std::string name) {
    const int dim = family.param_count();
    // Probe for a closed form at a representative in-domain point.
    Vector probe(dim);
    for (int i = 0; i < dim; ++i) probe[i] = family.param_domain()[static_cast<std::size_t>(i)].bounded_below() ? 1.0 : 0.0;
    std::vector<DensityFactor> volume;
    for_each_block(family, probe, [&](const Block& b, int, int) { volume.insert(volume.end(), b.volume.begin(), b.volume.end()); });

    ManifoldModel model(name.empty() ? family.label() : std::move(name), family.param_names(), family.param_domain(),
                        [family](const Vector& theta) { return fisher_metric_closed_form(family, theta); });
    return model
        .with_christoffel([family, dim](const Vector& theta) {
            family.validate(theta);
            Christoffel out(dim);
            for_each_block(family, theta, [&](const Block& b, int offset, int k) {
                for (int r = 0; r < k; ++r)
                    for (int m = 0; m < k; ++m)
                        for (int n = 0; n < k; ++n) out(offset + r, offset + m, offset + n) = b.gamma(r, m, n);
            });
            return out;
        })
        .with_riemann([family, dim](const Vector& theta) {
            family.validate(theta);
            Riemann out(dim);
            for_each_block(family, theta, [&](const Block& b, int offset, int k) {
                for (int a = 0; a < k; ++a)
                    for (int s = 0; s < k; ++s)
                        for (int m = 0; m < k; ++m)
                            for (int n = 0; n < k; ++n)
                                out(offset + a, offset + s, offset + m, offset + n) = b.riemann(a, s, m, n);
            });
            return out;
        })
        .with_volume_factors(std::move(volume));
}

ManifoldModel integrable_model() {
    return model_from_family(FamilySpec::make(FamilyName::composite_integrable), "integrable");
}

ManifoldModel chaotic_model() { return model_from_family(FamilySpec::make(FamilyName::composite_chaotic), "chaotic"); }

ManifoldModel gaussian_model() { return model_from_family(FamilySpec::make(FamilyName::gaussian), "gaussian"); }

ManifoldModel euclidean_model(int dim) {
    if (dim < 1) throw Error(ErrorKind::shape, "euclidean model needs dim >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
    return ManifoldModel("euclidean" + std::to_string(dim), names, std::vector<Interval>(static_cast<std::size_t>(dim)),
                         [dim](const Vector&) { return Matrix(Matrix::Identity(dim, dim)); })
        .with_volume_factors(std::vector<DensityFactor>(static_cast<std::size_t>(dim), [](double) { return 1.0; }));
}

ManifoldModel model_by_name(const std::string& name) {
    if (name == "integrable") return integrable_model();
    if (name == "chaotic") return chaotic_model();
    if (name == "gaussian") return gaussian_model();
    if (name == "euclidean2") return euclidean_model(2);
    if (name == "euclidean3") return euclidean_model(3);
    throw Error(ErrorKind::unsupported, "unknown manifold '" + name + "'", "manifold");
}

double line_element(const ManifoldModel& model, const Vector& theta, const Vector& dtheta) {
    if (dtheta.size() != model.dim()) throw Error(ErrorKind::shape, model.name() + ": displacement has wrong dimension", "dtheta");
    const Matrix g = model.metric(theta);
    return dtheta.dot(g * dtheta);
}

}  // namespace igac
