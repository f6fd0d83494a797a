#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eforce/numerics.hpp"

using namespace eforce::numerics;

namespace {

std::vector<double> sampled(double (*f)(double), double t0, double dt, std::size_t n) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = f(t0 + static_cast<double>(i) * dt);
    return y;
}

}  // namespace

TEST_CASE("cumulative quadrature is exact for constants") {
    const std::vector<double> y(101, 3.5);
    const auto e = cumulative_quadrature(y, 0.01);
    REQUIRE(e.size() == y.size());
    CHECK(e[0] == 0.0);
    CHECK(e[100] == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(e[50] == doctest::Approx(1.75).epsilon(1e-14));
}

TEST_CASE("cumulative quadrature is exact for polynomials through cubic") {
    // Simpson integrates cubics exactly; the odd-prefix trapezoid closure is
    // the only approximation and it only touches odd indices.
    const std::size_t n = 1001;
    const double dt = 1e-3;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        y[i] = t * t * t - 2.0 * t;
    }
    const auto e = cumulative_quadrature(y, dt);
    const double t1 = 1.0;
    CHECK(e.back() == doctest::Approx(t1 * t1 * t1 * t1 / 4 - t1 * t1).epsilon(1e-12));
}

TEST_CASE("integrate_samples reproduces an analytic antiderivative") {
    const double dt = 1e-3;
    const std::size_t n = static_cast<std::size_t>(std::round(std::numbers::pi / 2 / dt)) + 1;
    const auto y = sampled(+[](double t) { return std::cos(t); }, 0.0, dt, n);
    // grid end is (n-1)*dt, close to pi/2 but not exact; compare against sin
    const double t_end = static_cast<double>(n - 1) * dt;
    CHECK(integrate_samples(y, dt) == doctest::Approx(std::sin(t_end)).epsilon(1e-9));
}

TEST_CASE("derivative_samples recovers cos from sin at second order") {
    const double dt = 1e-3;
    const std::size_t n = 2001;
    const auto y = sampled(+[](double t) { return std::sin(t); }, 0.0, dt, n);
    const auto d = derivative_samples(y, dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        worst = std::max(worst, std::abs(d[i] - std::cos(t)));
    }
    CHECK(worst < 5e-7);
}

TEST_CASE("derivative_samples halves the error by four when dt halves") {
    auto max_err = [](double dt, std::size_t n) {
        const auto y = sampled(+[](double t) { return std::sin(t); }, 0.3, dt, n);
        const auto d = derivative_samples(y, dt);
        double worst = 0.0;
        // interior only: endpoint stencils converge at a different order
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double t = 0.3 + static_cast<double>(i) * dt;
            worst = std::max(worst, std::abs(d[i] - std::cos(t)));
        }
        return worst;
    };
    const double e1 = max_err(2e-3, 1001);
    const double e2 = max_err(1e-3, 2001);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("derivative_central4 nails smooth functions") {
    const auto f = [](double x) { return std::exp(x) * std::sin(2 * x); };
    const double x = 0.7;
    const double exact = std::exp(x) * (std::sin(2 * x) + 2 * std::cos(2 * x));
    CHECK(derivative_central4(f, x, 1e-3) == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("mean_std on a known sample") {
    const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
    const auto ms = mean_std(y);
    CHECK(ms.mean == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(ms.std_dev == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
}

TEST_CASE("linspace hits both ends exactly") {
    const auto v = linspace(-30.0, 30.0, 121);
    REQUIRE(v.size() == 121);
    CHECK(v.front() == -30.0);
    CHECK(v.back() == 30.0);
    CHECK(v[60] == doctest::Approx(0.0).epsilon(1e-15));
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("linspace rejects bad ranges") {
    CHECK_THROWS_AS(linspace(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}
