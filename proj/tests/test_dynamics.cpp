#include <doctest.h>

#include <cmath>

#include "igac/dynamics.hpp"
#include "igac/error.hpp"
#include "igac/manifold.hpp"

using namespace igac;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

// Sample index whose tau is closest to t.
std::size_t at(const GeodesicTrajectory& t, double tau) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(t.tau[i] - tau) < std::abs(t.tau[best] - tau)) best = i;
    return best;
}

double max_speed_drift(const GeodesicTrajectory& t) {
    double d = 0.0;
    for (double s : t.speed) d = std::max(d, std::abs(s - t.speed.front()));
    return d;
}

const double kRoot2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("exponential geodesics of the integrable model") {
    const auto t = integrate_geodesic(integrable_model(), vec({1, 1}), vec({1, 0}), 1.0);
    CHECK(t.termination == Termination::completed);
    CHECK(t.tau.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(t.coords.back()[0] - std::exp(1.0)) < 1e-6);
    CHECK(std::abs(t.coords.back()[1] - 1.0) < 1e-12);
    // μ(τ) = μ0 e^{vτ/μ0} at every recorded sample.
    const auto u = integrate_geodesic(integrable_model(), vec({2, 0.5}), vec({0.6, -0.1}), 5.0);
    for (std::size_t i = 0; i < u.size(); i += 37) {
        CHECK(u.coords[i][0] == doctest::Approx(2 * std::exp(0.3 * u.tau[i])).epsilon(1e-8));
        CHECK(u.coords[i][1] == doctest::Approx(0.5 * std::exp(-0.2 * u.tau[i])).epsilon(1e-8));
    }
}

TEST_CASE("zero velocity gives a constant trajectory") {
    for (const auto& m : {integrable_model(), chaotic_model(), gaussian_model()}) {
        const Vector p = m.dim() == 3 ? vec({1, 0.5, 2}) : vec({1, 2});
        const auto t = integrate_geodesic(m, p, Vector::Zero(m.dim()), 3.0);
        for (const auto& c : t.coords) CHECK((c - p).norm() == 0.0);
    }
}

TEST_CASE("speed conservation up to tau = 10") {
    const auto g = integrate_geodesic(gaussian_model(), vec({0, 1}), vec({0.4, 0.3}), 10.0);
    CHECK(g.speed.front() == doctest::Approx(std::sqrt(0.16 + 2 * 0.09)));
    CHECK(max_speed_drift(g) < 1e-8);
    const auto unit = integrate_geodesic(gaussian_model(), vec({0, 1}), vec({0, 1 / kRoot2}), 10.0);
    CHECK(unit.speed.front() == doctest::Approx(1.0));
    CHECK(max_speed_drift(unit) < 1e-8);
    CHECK(max_speed_drift(integrate_geodesic(integrable_model(), vec({1, 2}), vec({0.3, -0.4}), 10.0)) < 1e-8);
    CHECK(max_speed_drift(integrate_geodesic(chaotic_model(), vec({1, 0, 1}), vec({0.2, 0.3, 0.1}), 10.0)) < 1e-8);
    CHECK(max_speed_drift(integrate_geodesic(chaotic_model().generic(), vec({1, 0, 1}), vec({0.2, 0.3, 0.1}), 10.0)) <
          1e-8);
}

TEST_CASE("time reversal returns to the start") {
    for (const auto& m : {integrable_model(), chaotic_model(), gaussian_model()}) {
        const Vector p = m.dim() == 3 ? vec({1, 0, 1}) : vec({0.5, 1.5});
        const Vector v = m.dim() == 3 ? vec({0.1, 0.3, -0.05}) : vec({0.2, 0.25});
        const auto fwd = integrate_geodesic(m, p, v, 10.0);
        const auto back = integrate_geodesic(m, fwd.coords.back(), -fwd.velocity.back(), 10.0);
        CHECK((back.coords.back() - p).norm() < 1e-6);
    }
}

TEST_CASE("boundary events stop the run with partial results") {
    const auto t = integrate_geodesic(gaussian_model(), vec({0, 1}), vec({0, -1}), 100.0);
    CHECK(t.termination == Termination::boundary);
    CHECK(t.boundary_coordinate == "sigma");
    CHECK(t.tau.back() < 100.0);
    CHECK(t.coords.back()[1] > 0.0);
    CHECK(t.coords.back()[1] < 1e-6);
    const auto u = integrate_geodesic(integrable_model(), vec({1, 1}), vec({-1, 0}), 50.0);
    CHECK(u.termination == Termination::boundary);
    CHECK(u.boundary_coordinate == "mu_A");
    CHECK(std::string(to_string(u.termination)) == "boundary");
}

TEST_CASE("invalid requests") {
    CHECK_THROWS_AS(integrate_geodesic(integrable_model(), vec({1, 1}), vec({1, 0}), 0.0), Error);
    CHECK_THROWS_AS(integrate_geodesic(integrable_model(), vec({-1, 1}), vec({1, 0}), 1.0), Error);
    CHECK_THROWS_AS(integrate_geodesic(integrable_model(), vec({1, 1, 1}), vec({1, 0}), 1.0), Error);
    const auto t = integrate_geodesic(integrable_model(), vec({1, 1}), vec({1, 0}), 1.0);
    CHECK_THROWS_AS(integrate_jacobi(gaussian_model(), t, vec({1, 0}), vec({0, 0})), Error);
    CHECK_THROWS_AS(estimate_lambda_j(t, 0.0, 1.0), Error);
}

TEST_CASE("flat-space Jacobi fields are affine") {
    const auto m = euclidean_model(2);
    const auto geo = integrate_geodesic(m, vec({0, 0}), vec({1, 0}), 30.0);
    const auto j = integrate_jacobi(m, geo, vec({0, 0}), vec({0, 1}));
    REQUIRE(j.has_jacobi());
    REQUIRE(j.size() == geo.size());
    for (std::size_t i = 0; i < j.size(); i += 50) CHECK(j.jacobi_norm[i] == doctest::Approx(j.tau[i]).epsilon(1e-10));
    const auto k = integrate_jacobi(m, geo, vec({1, 0}), vec({0, 1}));
    for (std::size_t i = 0; i < k.size(); i += 50) {
        CHECK(k.jacobi[i][0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(k.jacobi[i][1] == doctest::Approx(k.tau[i]).epsilon(1e-10));
    }
    // Linear growth has log-slope ln(τ1/τ0)/(τ1 - τ0) on [τ0, τ1]: 0.055 on
    // [10, 30] but 0.026 on [10, 100].
    CHECK(estimate_lambda_j(j, 10, 30).lambda_j == doctest::Approx(std::log(3.0) / 20).epsilon(0.01));
    const auto long_j = integrate_jacobi(m, integrate_geodesic(m, vec({0, 0}), vec({1, 0}), 100.0), vec({0, 0}),
                                         vec({0, 1}));
    CHECK(estimate_lambda_j(long_j, 10, 100).lambda_j < 0.05);
}

TEST_CASE("Jacobi field on the Gaussian submanifold grows like sinh") {
    const auto m = gaussian_model();
    const auto geo = integrate_geodesic(m, vec({0, 1}), vec({0, 1 / kRoot2}), 30.0);
    const auto j = integrate_jacobi(m, geo, vec({0, 0}), vec({1, 0}));
    const auto i5 = at(j, 5.0);
    REQUIRE(std::abs(j.tau[i5] - 5.0) < 0.05);
    const double expected = kRoot2 * std::sinh(j.tau[i5] / kRoot2);
    CHECK(std::abs(j.jacobi_norm[i5] / expected - 1.0) < 1e-4);
    // ||J|| is the g-norm of J.
    const Matrix g = m.metric(j.coords[i5]);
    CHECK(j.jacobi_norm[i5] == doctest::Approx(std::sqrt(j.jacobi[i5].dot(g * j.jacobi[i5]))));
    const auto est = estimate_lambda_j(j, 10, 30);
    CHECK(std::abs(est.lambda_j / (1 / kRoot2) - 1.0) < 0.02);
    CHECK(est.r2 > 0.999);
    CHECK(est.samples >= 10);
    // The generic finite-difference path agrees.
    const auto jg = integrate_jacobi(m.generic(), integrate_geodesic(m.generic(), vec({0, 1}), vec({0, 1 / kRoot2}), 10.0),
                                     vec({0, 0}), vec({1, 0}));
    const auto k5 = at(jg, 5.0);
    CHECK(std::abs(jg.jacobi_norm[k5] / (kRoot2 * std::sinh(jg.tau[k5] / kRoot2)) - 1.0) < 1e-4);
}

TEST_CASE("Jacobi fields on the integrable model grow at most linearly") {
    const auto m = integrable_model();
    const auto geo = integrate_geodesic(m, vec({1, 1}), vec({0.3, 0.2}), 10.0);
    const auto j = integrate_jacobi(m, geo, vec({0, 0}), vec({1, 0}));
    // Slope of log ||J|| against log τ over [1, 10].
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j.tau[i] < 1.0) continue;
        const double x = std::log(j.tau[i]), y = std::log(j.jacobi_norm[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y, ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - 1.0) < 0.02);
}

TEST_CASE("Jacobi equation is linear") {
    const auto m = chaotic_model();
    const auto geo = integrate_geodesic(m, vec({1, 0, 1}), vec({0.1, 0.2, 0.05}), 8.0);
    const auto a = integrate_jacobi(m, geo, vec({1, 0, 0}), vec({0, 0.5, 0}));
    const auto b = integrate_jacobi(m, geo, vec({0, 0.3, 1}), vec({0.2, 0, -0.1}));
    const auto ab = integrate_jacobi(m, geo, vec({1, 0.3, 1}), vec({0.2, 0.5, -0.1}));
    double worst = 0.0;
    for (std::size_t i = 0; i < ab.size(); ++i)
        worst = std::max(worst, (ab.jacobi[i] - a.jacobi[i] - b.jacobi[i]).norm() / (1.0 + ab.jacobi[i].norm()));
    CHECK(worst < 1e-7);
}

TEST_CASE("chaotic model with expanding initial data has positive lambda_J") {
    const auto m = chaotic_model();
    const auto geo = integrate_geodesic(m, vec({1, 0, 1}), vec({0, 0.25, 0}), 100.0);
    CHECK(geo.termination == Termination::completed);
    const auto j = integrate_jacobi(m, geo, vec({0, 0, 1}), vec({0, 0, 0}));
    const auto est = estimate_lambda_j(j, 10, 100);
    CHECK(est.lambda_j > 0.1);
    CHECK(est.r2 > 0.999);
}
