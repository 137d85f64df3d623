#include <doctest.h>

#include <algorithm>

#include "igac/error.hpp"
#include "igac/families.hpp"
#include "igac/manifold.hpp"
#include "igac/spinchain.hpp"
#include "oracles.hpp"

using namespace igac;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

std::vector<double> column(const std::vector<Vector>& rows, Eigen::Index k) {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("density examples") {
    const auto ci = FamilySpec::make(FamilyName::composite_integrable);
    CHECK(density(ci, vec({1, 1}), vec({0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(density(FamilySpec::make(FamilyName::exponential), vec({2}), vec({0})) == doctest::Approx(0.5));
    const double expected = oracle::kPi / 2 * std::exp(-oracle::kPi / 4);
    CHECK(density(FamilySpec::make(FamilyName::wigner_dyson), vec({1}), vec({1})) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.716186).epsilon(1e-6));
}

TEST_CASE("density outside the support is zero, bad parameters name themselves") {
    const auto e = FamilySpec::make(FamilyName::exponential);
    CHECK(density(e, vec({1}), vec({-0.5})) == 0.0);
    CHECK(std::isinf(log_density(e, vec({1}), vec({-0.5}))));
    const auto cc = FamilySpec::make(FamilyName::composite_chaotic);
    try {
        density(cc, vec({1, 0, -1}), vec({1, 0}));
        FAIL("expected a domain error");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::domain);
        CHECK(err.field() == "sigma_B");
    }
    CHECK_THROWS_AS(density(e, vec({1, 2}), vec({1})), Error);
}

TEST_CASE("parameter domains of scale parameters are strictly positive") {
    const auto ci = FamilySpec::make(FamilyName::composite_integrable);
    CHECK(ci.param_names() == std::vector<std::string>{"mu_A", "mu_B"});
    CHECK(ci.param_domain()[0].lo == 0.0);
    CHECK(ci.param_domain()[1].lo == 0.0);
    const auto cc = FamilySpec::make(FamilyName::composite_chaotic);
    CHECK(cc.param_names() == std::vector<std::string>{"mu_A", "mu_B", "sigma_B"});
    CHECK(cc.param_domain()[0].lo == 0.0);
    CHECK(cc.param_domain()[1].lo == -kInf);
    CHECK(cc.param_domain()[2].lo == 0.0);
}

TEST_CASE("poisson_spacing is the exponential law") {
    const auto p = FamilySpec::make(FamilyName::poisson_spacing);
    for (double x : {0.0, 0.3, 1.0, 4.0})
        CHECK(density(p, vec({1.7}), vec({x})) == doctest::Approx(oracle::exponential_pdf(1.7, x)).epsilon(1e-14));
    CHECK(FamilySpec::parse("poisson_spacing").name() == FamilyName::poisson_spacing);
    CHECK_THROWS_AS(FamilySpec::parse("brody"), Error);
}

TEST_CASE("moments") {
    auto m = moments(FamilySpec::make(FamilyName::exponential), vec({3}));
    CHECK(m.mean[0] == doctest::Approx(3));
    CHECK(m.variance[0] == doctest::Approx(9));
    m = moments(FamilySpec::make(FamilyName::gaussian), vec({0, 1}));
    CHECK(m.mean[0] == doctest::Approx(0));
    CHECK(m.variance[0] == doctest::Approx(1));

    // Wigner-Dyson moments against an independent quadrature of the density formula.
    for (double mu : {1.0, 2.5}) {
        const double mean = oracle::simpson([&](double x) { return x * oracle::wigner_pdf(mu, x); }, 0, 20 * mu);
        const double second =
            oracle::simpson([&](double x) { return x * x * oracle::wigner_pdf(mu, x); }, 0, 20 * mu);
        m = moments(FamilySpec::make(FamilyName::wigner_dyson), vec({mu}));
        CHECK(m.mean[0] == doctest::Approx(mean).epsilon(1e-9));
        CHECK(m.mean[0] == doctest::Approx(mu).epsilon(1e-12));
        CHECK(m.variance[0] == doctest::Approx(second - mean * mean).epsilon(1e-8));
        CHECK(m.variance[0] == doctest::Approx((4 / oracle::kPi - 1) * mu * mu).epsilon(1e-12));
    }
    CHECK_THROWS_AS(moments(FamilySpec::make(FamilyName::exponential), vec({-1})), Error);
}

TEST_CASE("normalization over a parameter grid") {
    for (int k = 0; k < 10; ++k) {
        const double s = 0.3 + 0.5 * k;
        const double mu = -2.0 + 0.45 * k;
        CHECK(normalization(FamilySpec::make(FamilyName::exponential), vec({s})) == doctest::Approx(1).epsilon(1e-8));
        CHECK(normalization(FamilySpec::make(FamilyName::wigner_dyson), vec({s})) == doctest::Approx(1).epsilon(1e-8));
        CHECK(normalization(FamilySpec::make(FamilyName::gaussian), vec({mu, s})) == doctest::Approx(1).epsilon(1e-8));
        CHECK(normalization(FamilySpec::make(FamilyName::composite_integrable), vec({s, 1.0 / s})) ==
              doctest::Approx(1).epsilon(1e-8));
        CHECK(normalization(FamilySpec::make(FamilyName::composite_chaotic), vec({s, mu, s})) ==
              doctest::Approx(1).epsilon(1e-8));
        // Independent check of the integrand itself.
        const auto g = FamilySpec::make(FamilyName::gaussian);
        const double z = oracle::simpson([&](double x) { return density(g, vec({mu, s}), vec({x})); },
                                         mu - 12 * s, mu + 12 * s);
        CHECK(z == doctest::Approx(1).epsilon(1e-9));
    }
}

TEST_CASE("composite density factorizes exactly") {
    const auto ci = FamilySpec::make(FamilyName::composite_integrable);
    const auto cc = FamilySpec::make(FamilyName::composite_chaotic);
    for (double a : {0.4, 1.0, 2.2})
        for (double x : {0.0, 0.5, 3.0}) {
            CHECK(density(ci, vec({a, 1.3}), vec({x, 2 * x})) ==
                  doctest::Approx(oracle::exponential_pdf(a, x) * oracle::exponential_pdf(1.3, 2 * x)).epsilon(1e-14));
            const double p = density(cc, vec({a, -0.5, 0.8}), vec({x, x - 1}));
            const double q = density(FamilySpec::make(FamilyName::wigner_dyson), vec({a}), vec({x})) *
                             density(FamilySpec::make(FamilyName::gaussian), vec({-0.5, 0.8}), vec({x - 1}));
            CHECK(p == q);
        }
    const auto prod = FamilySpec::product(
        {FamilySpec::make(FamilyName::exponential), FamilySpec::make(FamilyName::exponential)});
    CHECK(prod.param_names() == std::vector<std::string>{"mu_0", "mu_1"});
    CHECK(density(prod, vec({1, 2}), vec({1, 1})) == oracle::exponential_pdf(1, 1) * oracle::exponential_pdf(2, 1));
}

TEST_CASE("sampling: determinism, means and KS distance") {
    const auto e = FamilySpec::make(FamilyName::exponential);
    const auto w = FamilySpec::make(FamilyName::wigner_dyson);
    const auto g = FamilySpec::make(FamilyName::gaussian);

    for (const auto* f : {&e, &w}) {
        const auto a = sample(*f, vec({1.5}), 1, 99);
        const auto b = sample(*f, vec({1.5}), 1, 99);
        CHECK(a.front()[0] == b.front()[0]);
    }
    CHECK(sample(g, vec({0, 1}), 1, 5).front()[0] == sample(g, vec({0, 1}), 1, 5).front()[0]);
    CHECK(sample(e, vec({1}), 3, 1)[0][0] != sample(e, vec({1}), 3, 2)[0][0]);

    CHECK(std::abs(mean_of(column(sample(e, vec({1}), 100000, 2024), 0)) - 1.0) < 0.02);
    CHECK(std::abs(mean_of(column(sample(w, vec({2}), 100000, 2024), 0)) - 2.0) < 0.05);

    const auto se = column(sample(e, vec({1.3}), 10000, 7), 0);
    const auto sw = column(sample(w, vec({0.8}), 10000, 7), 0);
    const auto sg = column(sample(g, vec({-1, 2}), 10000, 7), 0);
    CHECK(ks_distance(se, [](double x) { return oracle::exponential_cdf(1.3, x); }) < 0.02);
    CHECK(ks_distance(sw, [](double x) { return oracle::wigner_cdf(0.8, x); }) < 0.02);
    CHECK(ks_distance(sg, [](double x) { return oracle::gaussian_cdf(-1, 2, x); }) < 0.02);

    // Library CDFs agree with the oracle formulas.
    for (double x : {0.1, 1.0, 2.5}) {
        CHECK(cdf(e, vec({1.3}), x) == doctest::Approx(oracle::exponential_cdf(1.3, x)));
        CHECK(cdf(w, vec({0.8}), x) == doctest::Approx(oracle::wigner_cdf(0.8, x)));
        CHECK(cdf(g, vec({-1, 2}), x) == doctest::Approx(oracle::gaussian_cdf(-1, 2, x)));
    }

    const auto cc = sample(FamilySpec::make(FamilyName::composite_chaotic), vec({1, 0, 1}), 4, 3);
    REQUIRE(cc.size() == 4);
    CHECK(cc.front().size() == 2);
}
