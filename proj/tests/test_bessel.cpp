#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracwave/bessel.hpp"
#include "oracle/bessel_oracle.h"

using namespace fracwave;

TEST_CASE("half-integer closed form") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^-z, and K is even in nu
    for (double z : {0.05, 0.8, 2.0, 7.0, 150.0}) {
        CAPTURE(z);
        const double want = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
        CHECK(bessel_k(0.5, z) == Catch::Approx(want).epsilon(1e-13));
        CHECK(bessel_k(-0.5, z) == Catch::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("integral representation anchor") {
    CHECK(bessel_k(0.3, 2.0)
          == Catch::Approx(bessel_k03_at2_integral).epsilon(1e-13));
}

TEST_CASE("frozen reference grid") {
    for (const auto& row : bessel_ref_grid) {
        CAPTURE(row.nu, row.z);
        const double got = bessel_k(row.nu, row.z);
        CHECK(std::fabs(got - row.value) <= 1e-12 * std::fabs(row.value));
    }
}

TEST_CASE("series and continued fraction agree across the overlap band") {
    for (double nu : {0.05, 0.31, 0.5, 0.77, 0.98}) {
        for (double z : {1.5, 1.9, 2.3, 2.7, 3.0}) {
            CAPTURE(nu, z);
            const double m = (nu <= 0.5) ? 0.0 : 1.0;
            const double q = nu - m;
            double ta, tb, ca, cb;
            detail::temme_kpair_scaled(q, z, ta, tb);
            detail::cf2_kpair_scaled(q, z, ca, cb);
            CHECK(std::fabs(ta - ca) <= 1e-10 * ca);
            CHECK(std::fabs(tb - cb) <= 1e-10 * cb);
        }
    }
}

TEST_CASE("three-term recurrence consistency from independent evaluations") {
    for (double nu : {0.7, 1.6, 3.3}) {
        for (double z : {0.4, 2.0, 11.0}) {
            CAPTURE(nu, z);
            const double lhs = bessel_k(nu + 1.0, z);
            const double rhs = bessel_k(nu - 1.0, z)
                + (2.0 * nu / z) * bessel_k(nu, z);
            CHECK(std::fabs(lhs - rhs) <= 1e-11 * lhs);
        }
    }
}

TEST_CASE("order ladder matches the frozen references") {
    for (double s : {0.3, 0.85}) {
        for (double z : {0.5, 2.0, 10.0}) {
            const auto lad = bessel_k_ladder(s, 8, z);
            for (const auto& row : bessel_ref_ladder) {
                if (row.z != z) continue;
                // rows hold nu = m - s for m = 1..8
                const double mf = row.nu + s;
                const int m = (int)std::lround(mf);
                if (std::fabs(mf - m) > 1e-9 || m < 1 || m > 8) continue;
                CAPTURE(s, z, m);
                CHECK(std::fabs(lad[m] - row.value) <= 1e-11 * row.value);
            }
            // rung zero is K_s by symmetry
            CHECK(lad[0] == Catch::Approx(bessel_k(s, z)).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaled variant strips the exponential factor") {
    for (double z : {0.7, 3.0, 100.0, 700.0}) {
        CAPTURE(z);
        const double ratio = bessel_k_scaled(0.25, z)
            / (std::sqrt(std::numbers::pi / (2.0 * z)));
        CHECK(ratio > 0.8);
        CHECK(ratio < 30.0);
    }
    CHECK(bessel_k_scaled(0.3, 2.0)
          == Catch::Approx(bessel_k(0.3, 2.0) * std::exp(2.0)).epsilon(1e-13));
}

TEST_CASE("underflow past the exponential range is flagged") {
    const auto r = bessel_k_report(0.3, 800.0);
    CHECK(r.value == 0.0);
    CHECK(r.underflowed);
    const auto ok = bessel_k_report(0.3, 600.0);
    CHECK(!ok.underflowed);
    CHECK(ok.value > 0.0);
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(bessel_k(0.3, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_k(0.3, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_k_ladder(1.2, 4, 1.0), OutOfRange);
    CHECK_THROWS_AS(bessel_k_ladder(0.3, -1, 1.0), OutOfRange);
}
