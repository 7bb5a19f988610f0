#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracwave/quadrature.hpp"

using namespace fracwave;

TEST_CASE("legendre rules integrate polynomials exactly") {
    const auto& r = legendre_rule(6);
    REQUIRE(r.x.size() == 6);
    double s0 = 0, s2 = 0, s10 = 0;
    for (size_t i = 0; i < r.x.size(); ++i) {
        s0 += r.w[i];
        s2 += r.w[i] * r.x[i] * r.x[i];
        s10 += r.w[i] * std::pow(r.x[i], 10);
    }
    CHECK(s0 == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s10 == Catch::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("jacobi rule reproduces the chebyshev case") {
    // weight (1-x)^(-1/2) (1+x)^(-1/2): all weights equal pi/n
    const auto& r = jacobi_rule(7, -0.5, -0.5);
    for (double w : r.w)
        CHECK(w == Catch::Approx(std::numbers::pi / 7.0).epsilon(1e-13));
    CHECK(r.x[3] == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("adaptive integration of smooth functions") {
    const double got = integrate_adaptive(
        [](double x) { return std::sin(3.0 * x) * std::exp(x); }, 0.0, 2.0, {});
    // antiderivative of e^x sin(3x) is e^x (sin(3x) - 3 cos(3x)) / 10
    const double want = (std::exp(2.0) * (std::sin(6.0) - 3 * std::cos(6.0))
                         - (0.0 - 3.0)) / 10.0;
    CHECK(got == Catch::Approx(want).epsilon(1e-12));
}

TEST_CASE("left-endpoint power singularities") {
    // int_0^1 z^eta dz = 1/(eta+1), exact placement of the weight
    for (double eta : {-0.9, -0.5, -0.1, 0.3}) {
        CAPTURE(eta);
        const double got = integrate_singular_left(
            [](double) { return 1.0; }, eta, 1.0, {});
        CHECK(got == Catch::Approx(1.0 / (eta + 1.0)).epsilon(1e-12));
    }
    // a genuinely curved factor against the singular weight:
    // int_0^2 z^-0.5 cos z dz, reference from 30-digit quadrature
    const double got = integrate_singular_left(
        [](double z) { return std::cos(z); }, -0.5, 2.0, {});
    CHECK(got == Catch::Approx(1.8882490336945141).epsilon(1e-11));
    CHECK_THROWS_AS(integrate_singular_left([](double) { return 1.0; },
                                            -1.0, 1.0, {}),
                    NonIntegrable);
}

TEST_CASE("tail transform integrates decaying functions") {
    const double got = integrate_tail(
        [](double z) { return std::exp(-z); }, {});
    CHECK(got == Catch::Approx(std::exp(-1.0)).epsilon(1e-11));
}

TEST_CASE("pairwise summation is deterministic and accurate") {
    std::vector<double> v;
    double x = 0.1;
    for (int i = 0; i < 10000; ++i) {
        v.push_back(std::sin(0.37 * i) * 1e-3 + x);
        x = -x;
    }
    const double a = pairwise_sum(v);
    const double b = pairwise_sum(v);
    CHECK(a == b);
    long double ref = 0.0L;
    for (double t : v) ref += (long double)t;
    CHECK(std::fabs(a - (double)ref) < 1e-12 * 10000);
}

TEST_CASE("rule cache returns stable references") {
    const auto& a = legendre_rule(16);
    const auto& b = legendre_rule(16);
    CHECK(&a == &b);
    CHECK_THROWS_AS(legendre_rule(0), OutOfRange);
}
