#include "igac/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace igac {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess for the i-th root (descending).
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

void MappedAxis::nodes(int n, std::vector<double>& x, std::vector<double>& w) const {
    const auto& rule = gauss_legendre(n);
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = rule.nodes[i];
        const double wu = rule.weights[i];
        if (support.bounded_below() && support.bounded_above()) {
            const double half = 0.5 * (support.hi - support.lo);
            x[i] = support.lo + half * (u + 1.0);
            w[i] = wu * half;
        } else if (support.bounded_below()) {
            const double t = 0.5 * (u + 1.0);
            const double one_minus = 1.0 - t;
            x[i] = support.lo + scale * t / one_minus;
            w[i] = 0.5 * wu * scale / (one_minus * one_minus);
        } else if (support.bounded_above()) {
            const double t = 0.5 * (u + 1.0);
            const double one_minus = 1.0 - t;
            x[i] = support.hi - scale * t / one_minus;
            w[i] = 0.5 * wu * scale / (one_minus * one_minus);
        } else {
            const double d = 1.0 - u * u;
            x[i] = center + scale * u / d;
            w[i] = wu * scale * (1.0 + u * u) / (d * d);
        }
    }
}

std::vector<double> integrate_product(const std::vector<MappedAxis>& axes, int n, int width,
                                      const std::function<void(const std::vector<double>&, double*)>& f) {
    const std::size_t dims = axes.size();
    std::vector<std::vector<double>> xs(dims), ws(dims);
    for (std::size_t d = 0; d < dims; ++d) axes[d].nodes(n, xs[d], ws[d]);

    std::vector<double> total(static_cast<std::size_t>(width), 0.0);
    std::vector<double> value(static_cast<std::size_t>(width), 0.0);
    std::vector<std::size_t> idx(dims, 0);
    std::vector<double> point(dims, 0.0);
    const auto nn = static_cast<std::size_t>(n);
    while (true) {
        double weight = 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
            point[d] = xs[d][idx[d]];
            weight *= ws[d][idx[d]];
        }
        std::fill(value.begin(), value.end(), 0.0);
        f(point, value.data());
        for (std::size_t k = 0; k < value.size(); ++k) total[k] += weight * value[k];

        std::size_t d = 0;
        while (d < dims && ++idx[d] == nn) idx[d++] = 0;
        if (d == dims) break;
    }
    return total;
}

double integrate_product(const std::vector<MappedAxis>& axes, int n,
                         const std::function<double(const std::vector<double>&)>& f) {
    return integrate_product(axes, n, 1, [&](const std::vector<double>& x, double* out) { out[0] = f(x); })[0];
}

double integrate_interval(double a, double b, int n, const std::function<double(double)>& f) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const auto& rule = gauss_legendre(n);
    double sum = 0.0;
    if (lo > 0.0 && hi / lo > 4.0) {
        const double ulo = std::log(lo);
        const double half = 0.5 * (std::log(hi) - ulo);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = std::exp(ulo + half * (rule.nodes[i] + 1.0));
            sum += rule.weights[i] * f(x) * x;
        }
        return sign * half * sum;
    }
    if (hi < 0.0 && lo / hi > 4.0) {
        return sign * integrate_interval(-hi, -lo, n, [&](double x) { return f(-x); });
    }
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(lo + half * (rule.nodes[i] + 1.0));
    return sign * half * sum;
}

}  // namespace igac
