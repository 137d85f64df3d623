#include <doctest.h>

#include <cmath>

#include "igac/quadrature.hpp"
#include "oracles.hpp"

using namespace igac;

TEST_CASE("Gauss-Legendre rules") {
    for (int n : {1, 2, 5, 16, 64, 257}) {
        const auto& r = gauss_legendre(n);
        REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double w : r.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
        // Exact for x^k, k <= 2n-1.
        for (int k : {2 * n - 2, 2 * n - 1}) {
            if (k < 0) continue;
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[static_cast<std::size_t>(i)] * std::pow(r.nodes[static_cast<std::size_t>(i)], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    CHECK(&gauss_legendre(64) == &gauss_legendre(64));
}

TEST_CASE("mapped axes on infinite supports") {
    MappedAxis half{kPositive, 0.0, 2.0};
    const double e = integrate_product({half}, 128, [](const std::vector<double>& x) { return std::exp(-x[0] / 2) / 2; });
    CHECK(e == doctest::Approx(1.0).epsilon(1e-10));

    MappedAxis line{kRealLine, 3.0, 0.5};
    const double g = integrate_product({line}, 128, [](const std::vector<double>& x) {
        return oracle::gaussian_pdf(3.0, 0.5, x[0]) * x[0] * x[0];
    });
    CHECK(g == doctest::Approx(9.25).epsilon(1e-10));

    const auto v = integrate_product({half, line}, 96, 2, [](const std::vector<double>& x, double* out) {
        const double p = std::exp(-x[0] / 2) / 2 * oracle::gaussian_pdf(3.0, 0.5, x[1]);
        out[0] = p;
        out[1] = p * x[0] * x[1];
    });
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("interval integration with a wide dynamic range") {
    CHECK(integrate_interval(1.0, 1e6, 32, [](double x) { return 1.0 / x; }) ==
          doctest::Approx(std::log(1e6)).epsilon(1e-12));
    CHECK(integrate_interval(0.0, 2.0, 8, [](double x) { return x * x; }) == doctest::Approx(8.0 / 3).epsilon(1e-14));
    CHECK(integrate_interval(-1.0, 1.0, 16, [](double x) { return std::cos(x); }) ==
          doctest::Approx(2 * std::sin(1.0)).epsilon(1e-14));
}
