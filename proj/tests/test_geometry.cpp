#include <doctest.h>

#include <random>

#include "igac/error.hpp"
#include "igac/geometry.hpp"
#include "igac/manifold.hpp"

using namespace igac;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

Vector random_point(const ManifoldModel& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.3, 4.0), any(-3.0, 3.0);
    Vector p(m.dim());
    for (int i = 0; i < m.dim(); ++i) p[i] = m.domain()[static_cast<std::size_t>(i)].lo == 0.0 ? pos(rng) : any(rng);
    return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Γ of diag(1/μ_A², 1/μ_B²): Γ^A_AA = -1/μ_A, Γ^B_BB = -1/μ_B.
Christoffel integrable_gamma(const Vector& p) {
    Christoffel G(2);
    G(0, 0, 0) = -1.0 / p[0];
    G(1, 1, 1) = -1.0 / p[1];
    return G;
}

// Γ of diag(1/σ², 2/σ²) at (μ, σ).
Christoffel gaussian_gamma(const Vector& p) {
    const double s = p[1];
    Christoffel G(2);
    G(0, 0, 1) = G(0, 1, 0) = -1.0 / s;
    G(1, 0, 0) = 1.0 / (2 * s);
    G(1, 1, 1) = -1.0 / s;
    return G;
}

}  // namespace

TEST_CASE("Christoffel symbols against analytic values") {
    const auto in = integrable_model();
    const auto at = vec({1, 1});
    const auto G = christoffel(in, at);
    CHECK(G(0, 0, 0) == doctest::Approx(-1.0));
    CHECK(G(1, 1, 1) == doctest::Approx(-1.0));
    CHECK(max_abs_diff(G.data(), integrable_gamma(at).data()) < 1e-14);
    CHECK(max_abs_diff(christoffel_fd(in, at).data(), integrable_gamma(at).data()) < 1e-7);

    const auto g = gaussian_model();
    const auto p = vec({0, 1});
    const auto H = christoffel(g, p);
    CHECK(H(0, 0, 1) == doctest::Approx(-1.0));
    CHECK(H(1, 0, 0) == doctest::Approx(0.5));
    CHECK(H(1, 1, 1) == doctest::Approx(-1.0));
    CHECK(max_abs_diff(christoffel_fd(g, p).data(), gaussian_gamma(p).data()) < 1e-7);

    const auto flat = christoffel(euclidean_model(3), vec({0.3, -2, 5}));
    for (double v : flat.data()) CHECK(v == 0.0);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto q = random_point(g, rng);
        CHECK(max_abs_diff(christoffel_fd(g, q).data(), gaussian_gamma(q).data()) < 1e-6);
        const auto r = random_point(in, rng);
        CHECK(max_abs_diff(christoffel_fd(in, r).data(), integrable_gamma(r).data()) < 1e-6);
    }
}

TEST_CASE("Christoffel symbols are symmetric in the lower indices") {
    const auto m = chaotic_model().generic();
    const auto G = christoffel(m, vec({1.2, 0.4, 0.8}));
    for (int r = 0; r < 3; ++r)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(G(r, a, b) == doctest::Approx(G(r, b, a)).epsilon(1e-12));
}

TEST_CASE("singular metrics raise inversion errors") {
    Matrix s(2, 2);
    s << 1, 1, 1, 1;
    try {
        inverse_metric(s);
        FAIL("expected an inversion error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::inversion);
    }
}

TEST_CASE("scalar curvature of the named models") {
    std::mt19937_64 rng(5);
    CurvatureOptions generic;
    generic.use_overrides = false;
    for (int i = 0; i < 10; ++i) {
        const auto p = random_point(integrable_model(), rng);
        CHECK(std::abs(curvature(integrable_model(), p).scalar) < 1e-6);
        CHECK(std::abs(curvature(integrable_model().generic(), p).scalar) < 1e-6);
        const auto q = random_point(chaotic_model(), rng);
        CHECK(curvature(chaotic_model(), q).scalar == doctest::Approx(-1.0).epsilon(1e-4));
        CHECK(curvature(chaotic_model().generic(), q).scalar == doctest::Approx(-1.0).epsilon(1e-4));
        CHECK(curvature(chaotic_model(), q, generic).scalar == doctest::Approx(-1.0).epsilon(1e-4));
    }
    CHECK(curvature(chaotic_model(), vec({1, 0, 1})).scalar == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(curvature(euclidean_model(2), vec({0, 0})).scalar == 0.0);
}

TEST_CASE("Gaussian submanifold has constant sectional curvature -1/2") {
    std::mt19937_64 rng(8);
    const auto g = gaussian_model().generic();
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 20; ++i) {
        const auto p = random_point(g, rng);
        for (double h : {1e-4, 5e-5}) {
            CurvatureOptions o;
            o.fd_step = h;
            const auto rep = curvature(g, p, o);
            lo = std::min(lo, rep.sectional(0, 1));
            hi = std::max(hi, rep.sectional(0, 1));
            CHECK(rep.sectional(0, 1) == doctest::Approx(rep.sectional(1, 0)));
        }
        const Riemann R = riemann(g, p);
        const Matrix gm = g.metric(p);
        CHECK(sectional_curvature(R, gm, vec({1, 0}), vec({0, 1})) == doctest::Approx(-0.5).epsilon(1e-5));
        CHECK(sectional_curvature(R, gm, vec({1, 2}), vec({-3, 1})) == doctest::Approx(-0.5).epsilon(1e-5));
    }
    CHECK(lo == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(hi - lo < 1e-5);
}

TEST_CASE("curvature report consistency") {
    std::mt19937_64 rng(13);
    for (const auto& m : {chaotic_model(), chaotic_model().generic(), integrable_model().generic()}) {
        for (int i = 0; i < 5; ++i) {
            const auto p = random_point(m, rng);
            const auto rep = curvature(m, p);
            CHECK(rep.sectional_sum() == doctest::Approx(rep.scalar).epsilon(1e-6));
            CHECK(std::abs(rep.scalar_half_step - rep.scalar) < 1e-4);
            CHECK(rep.richardson_delta < 1e-4);
            CHECK(bianchi_residual(rep.riemann) < 1e-6);
            CHECK(antisymmetry_residual(rep.riemann) < 1e-6);
            CHECK(metric_compatibility_residual(m, p) < 1e-6);
            // Orthonormal frame under g.
            const Matrix gram = rep.frame.transpose() * m.metric(p) * rep.frame;
            CHECK((gram - Matrix::Identity(m.dim(), m.dim())).norm() < 1e-10);
        }
    }
}

TEST_CASE("chaotic Ricci tensor is block diagonal with a flat Wigner-Dyson block") {
    const auto rep = curvature(chaotic_model().generic(), vec({1.3, -0.7, 0.9}));
    CHECK(std::abs(rep.ricci(0, 0)) < 1e-6);
    CHECK(std::abs(rep.ricci(0, 1)) < 1e-6);
    CHECK(std::abs(rep.ricci(0, 2)) < 1e-6);
    CHECK(std::abs(rep.ricci(1, 2)) < 1e-6);
    // Constant curvature K = -1/2 in two dimensions: Ric = K g.
    const Matrix g = chaotic_model().metric(vec({1.3, -0.7, 0.9}));
    CHECK(rep.ricci(1, 1) == doctest::Approx(-0.5 * g(1, 1)).epsilon(1e-5));
    CHECK(rep.ricci(2, 2) == doctest::Approx(-0.5 * g(2, 2)).epsilon(1e-5));
}

TEST_CASE("closed-form and finite-difference Riemann tensors agree") {
    const auto p = vec({0.8, 0.1, 1.7});
    const auto a = riemann(chaotic_model(), p);
    const auto b = riemann_from_connection(chaotic_model(), p, kDefaultFdStep, false);
    CHECK(max_abs_diff(a.data(), b.data()) < 1e-6);
}

TEST_CASE("scalar sign classification") {
    std::mt19937_64 rng(21);
    std::vector<Vector> chaotic_pts, integrable_pts, flat_pts;
    for (int i = 0; i < 50; ++i) {
        chaotic_pts.push_back(random_point(chaotic_model(), rng));
        integrable_pts.push_back(random_point(integrable_model(), rng));
        flat_pts.push_back(random_point(euclidean_model(2), rng));
    }
    const auto c = scalar_sign_classification(chaotic_model(), chaotic_pts);
    CHECK(c.sign == ScalarSign::negative);
    CHECK(c.points == 50);
    CHECK(c.max_scalar < 0.0);
    CHECK(std::string(to_string(c.sign)) == "negative");
    const auto r = scalar_sign_classification(integrable_model(), integrable_pts);
    CHECK(r.sign == ScalarSign::non_negative);
    CHECK(std::string(to_string(r.sign)) == "non-negative");
    CHECK(std::abs(r.min_scalar) < 1e-6);
    CHECK(scalar_sign_classification(euclidean_model(2), flat_pts).sign == ScalarSign::non_negative);
}

TEST_CASE("finite differences need room near the domain edge") {
    CurvatureOptions o;
    o.use_overrides = false;
    CHECK_THROWS_AS(curvature(gaussian_model(), vec({0, 1e-5}), o), Error);
}
