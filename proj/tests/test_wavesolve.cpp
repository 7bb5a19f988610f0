#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracwave/mlfunc.hpp"
#include "fracwave/spectral.hpp"
#include "fracwave/wavesolve.hpp"
#include "oracle/misc_oracle.h"

using fracwave::energy_report;
using fracwave::evaluate_solution;
using fracwave::FracWaveProblem;
using fracwave::Interval;
using fracwave::make_domain;
using fracwave::make_expansion;
using fracwave::make_problem;
using fracwave::ml;
using fracwave::ModeForcing;
using fracwave::ModeTrajectory;
using fracwave::residual_check;
using fracwave::solve_mode;
using fracwave::SpectralDomain;
using fracwave::unit_mode;

namespace {

constexpr double kPi = std::numbers::pi;

ModeTrajectory scalar_mode(double gamma, double lams, double g, double h,
                           ModeForcing force = {}) {
    fracwave::detail::ScalarMode m;
    m.gamma = gamma;
    m.lams = lams;
    m.g = g;
    m.h = h;
    m.force = std::move(force);
    return fracwave::detail::solve_scalar(0, std::move(m));
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / (n - 1);
    return t;
}

}  // namespace

TEST_CASE("classical wave limit reduces to trig") {
    const ModeTrajectory traj = scalar_mode(2.0, 4.0, 1.0, 0.0);
    for (double t : {0.2, 1.0, 2.7}) {
        CAPTURE(t);
        CHECK(traj.u(t) == Catch::Approx(std::cos(2.0 * t)).margin(1e-13));
        CHECK(traj.du(t)
              == Catch::Approx(-2.0 * std::sin(2.0 * t)).margin(1e-13));
        CHECK(traj.caputo_du(t)
              == Catch::Approx(-4.0 * std::cos(2.0 * t)).margin(1e-12));
    }
    const ModeTrajectory vel = scalar_mode(2.0, 9.0, 0.0, 2.0);
    for (double t : {0.4, 1.3})
        CHECK(vel.u(t)
              == Catch::Approx(2.0 * std::sin(3.0 * t) / 3.0).margin(1e-13));
}

TEST_CASE("relaxation mode matches the mittag-leffler form") {
    const ModeTrajectory traj = scalar_mode(1.5, 1.0, 1.0, 0.0);
    for (double t : {0.3, 1.0, 2.5}) {
        CAPTURE(t);
        const double z = -std::pow(t, 1.5);
        CHECK(traj.u(t) == Catch::Approx(ml(1.5, 1.0, z)).epsilon(1e-12));
        CHECK(traj.du(t)
              == Catch::Approx(-std::pow(t, 0.5) * ml(1.5, 1.5, z))
                     .epsilon(1e-12));
        CHECK(traj.caputo_du(t) + traj.u(t) == Catch::Approx(0.0).margin(1e-13));
    }
    const ModeTrajectory mixed = scalar_mode(1.7, 3.0, 0.0, 1.0);
    for (double t : {0.5, 1.5}) {
        const double z = -3.0 * std::pow(t, 1.7);
        CHECK(mixed.u(t) == Catch::Approx(t * ml(1.7, 2.0, z)).epsilon(1e-12));
        CHECK(mixed.du(t) == Catch::Approx(ml(1.7, 1.0, z)).epsilon(1e-12));
    }
}

TEST_CASE("forcing convolutions reproduce closed forms") {
    ModeForcing one;
    one.f = [](double) { return 1.0; };

    for (double gamma : {1.5, 1.8}) {
        const ModeTrajectory traj = scalar_mode(gamma, 0.0, 0.0, 0.0, one);
        for (double t : {1.0, 2.0}) {
            CAPTURE(gamma, t);
            CHECK(traj.u(t)
                  == Catch::Approx(std::pow(t, gamma) / std::tgamma(gamma + 1.0))
                         .epsilon(1e-10));
        }
    }

    const ModeTrajectory damped = scalar_mode(1.5, 2.0, 0.0, 0.0, one);
    for (double t : {0.7, 1.6}) {
        CAPTURE(t);
        const double z = -2.0 * std::pow(t, 1.5);
        CHECK(damped.u(t)
              == Catch::Approx(std::pow(t, 1.5) * ml(1.5, 2.5, z)).epsilon(1e-9));
        CHECK(damped.du(t)
              == Catch::Approx(std::pow(t, 0.5) * ml(1.5, 1.5, z)).epsilon(1e-9));
    }
}

TEST_CASE("forcing convolutions match the frozen references") {
    ModeForcing sine;
    sine.f = [](double r) { return std::sin(r); };

    const ModeTrajectory frac = scalar_mode(1.5, 2.0, 0.0, 0.0, sine);
    CHECK(frac.u(1.0) == Catch::Approx(conv_ref_t1).epsilon(1e-10));
    CHECK(frac.u(2.5) == Catch::Approx(conv_ref_t25).epsilon(1e-10));
    CHECK(frac.du(1.0) == Catch::Approx(conv_du_ref_t1).epsilon(1e-10));

    const ModeTrajectory trig = scalar_mode(2.0, 4.0, 0.0, 0.0, sine);
    CHECK(trig.u(1.0) == Catch::Approx(conv_trig_ref).epsilon(1e-12));
}

TEST_CASE("initial conditions and superposition hold") {
    const SpectralDomain d = make_domain(Interval{kPi}, 3);
    ModeForcing cosine;
    cosine.f = [](double r) { return std::cos(2.0 * r); };
    const std::vector<ModeForcing> fs = {cosine, ModeForcing{}, cosine};

    const auto g = make_expansion(d, {1.0, 0.5, -0.4});
    const auto h = make_expansion(d, {0.2, -0.3, 0.1});
    const auto zero = make_expansion(d, {0.0, 0.0, 0.0});
    const FracWaveProblem full = make_problem(d, 0.4, 1.6, 2.0, g, h, fs);
    const FracWaveProblem only_g = make_problem(d, 0.4, 1.6, 2.0, g, zero, {});
    const FracWaveProblem only_h = make_problem(d, 0.4, 1.6, 2.0, zero, h, {});
    const FracWaveProblem only_f = make_problem(d, 0.4, 1.6, 2.0, zero, zero, fs);

    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        const ModeTrajectory traj = solve_mode(full, k);
        CHECK(traj.u(0.0) == Catch::Approx(g.coeffs[k - 1]).margin(1e-12));
        CHECK(traj.du(0.0) == Catch::Approx(h.coeffs[k - 1]).margin(1e-10));
        const double split = solve_mode(only_g, k).u(0.7)
            + solve_mode(only_h, k).u(0.7) + solve_mode(only_f, k).u(0.7);
        CHECK(traj.u(0.7) == Catch::Approx(split).margin(1e-10));
    }
}

TEST_CASE("solution field reconstructs through the basis") {
    const SpectralDomain d = make_domain(Interval{kPi}, 8);
    const auto zero = make_expansion(d, std::vector<double>(8, 0.0));

    const FracWaveProblem single =
        make_problem(d, 0.5, 1.5, 2.0, unit_mode(d, 1), zero, {});
    for (double x : {0.8, 2.1})
        CHECK(evaluate_solution(single, x, 1.0)
              == Catch::Approx(ml(1.5, 1.0, -1.0) * d.eigenfunction(1, x))
                     .epsilon(1e-10));

    const auto g = project(d, [](double x) { return x * (kPi - x); });
    const FracWaveProblem poly = make_problem(d, 0.5, 1.5, 1.0, g, zero, {});
    CHECK(evaluate_solution(poly, 1.0, 0.0)
          == Catch::Approx(1.0 * (kPi - 1.0)).margin(0.01));

    const FracWaveProblem empty = make_problem(d, 0.5, 1.5, 1.0, zero, zero, {});
    CHECK(evaluate_solution(empty, 1.3, 0.6) == 0.0);
}

TEST_CASE("residuals certify the mode equation") {
    const SpectralDomain d = make_domain(Interval{kPi}, 2);
    const auto zero = make_expansion(d, {0.0, 0.0});
    const std::vector<double> grid = {0.2, 0.5, 0.75, 1.0};

    const FracWaveProblem relax =
        make_problem(d, 0.5, 1.5, 1.0, unit_mode(d, 1), zero, {});
    CHECK(residual_check(relax, 1, grid) < 1e-9);

    ModeForcing sine;
    sine.f = [](double r) { return std::sin(r); };
    const FracWaveProblem forced =
        make_problem(d, 0.5, 1.5, 1.0, zero, zero, {sine});
    CHECK(residual_check(forced, 1, grid) < 1e-7);

    const FracWaveProblem classical = make_problem(
        d, 0.5, 2.0, 1.0, make_expansion(d, {0.0, 0.5}),
        make_expansion(d, {0.0, -0.2}), {ModeForcing{}, sine});
    CHECK(residual_check(classical, 2, grid) < 1e-9);
}

TEST_CASE("energy ratios stay within the expected envelopes") {
    const SpectralDomain d = make_domain(Interval{kPi}, 2);
    const auto zero = make_expansion(d, {0.0, 0.0});
    const auto grid = linspace(0.0, 1.0, 33);

    const FracWaveProblem wave =
        make_problem(d, 0.5, 2.0, 1.0, unit_mode(d, 1), zero, {});
    const auto conserved = energy_report(wave, grid);
    CHECK(conserved.conservation_ratio >= 1.0 - 1e-6);
    CHECK(conserved.conservation_ratio <= 1.0 + 1e-6);

    const FracWaveProblem frac =
        make_problem(d, 0.5, 1.5, 1.0, unit_mode(d, 1), zero, {});
    const auto damped = energy_report(frac, grid);
    CHECK(damped.ratio_first > 0.0);
    CHECK(damped.ratio_first < 10.0);
    CHECK(damped.ratio_first_alt <= damped.ratio_first);
    CHECK(damped.ratio_second < 10.0);

    const FracWaveProblem empty = make_problem(d, 0.5, 1.5, 1.0, zero, zero, {});
    const auto silent = energy_report(empty, grid);
    CHECK(silent.ratio_first == 0.0);
    CHECK(silent.ratio_second == 0.0);
    CHECK(silent.conservation_ratio == 0.0);
}

TEST_CASE("solutions vary continuously into the classical limit") {
    const double eps = 1e-3;
    const ModeTrajectory nearly = scalar_mode(2.0 - eps, 2.0, 1.0, 0.3);
    const ModeTrajectory exact = scalar_mode(2.0, 2.0, 1.0, 0.3);
    CHECK(std::fabs(nearly.u(1.0) - exact.u(1.0)) < 5e-3);
    CHECK(std::fabs(nearly.du(1.0) - exact.du(1.0)) < 5e-3);
}

TEST_CASE("mode amplitudes decay with the resolvent envelope") {
    const SpectralDomain d = make_domain(Interval{kPi}, 12);
    const auto ones = make_expansion(d, std::vector<double>(12, 1.0));
    const auto zero = make_expansion(d, std::vector<double>(12, 0.0));
    const FracWaveProblem p = make_problem(d, 0.7, 1.4, 2.0, ones, zero, {});
    const double cap = fracwave::ml_decay_envelope(1.4, 1.0).sup_ratio;
    const double t = 1.5;
    for (int k = 1; k <= 12; ++k) {
        CAPTURE(k);
        const double lams = std::pow(d.eigenvalues[k - 1], 0.7);
        const double bound = cap / (1.0 + lams * std::pow(t, 1.4));
        CHECK(std::fabs(solve_mode(p, k).u(t)) <= bound * 1.0000001);
    }
}

TEST_CASE("problem construction validates its preconditions") {
    const SpectralDomain d = make_domain(Interval{kPi}, 2);
    const SpectralDomain other = make_domain(Interval{kPi}, 2);
    const auto zero = make_expansion(d, {0.0, 0.0});
    const auto foreign = make_expansion(other, {0.0, 0.0});

    CHECK_THROWS_AS(make_problem(d, 1.2, 1.5, 1.0, zero, zero, {}),
                    fracwave::DomainError);
    CHECK_THROWS_AS(make_problem(d, 0.5, 1.0, 1.0, zero, zero, {}),
                    fracwave::InvalidOrder);
    CHECK_THROWS_AS(make_problem(d, 0.5, 2.5, 1.0, zero, zero, {}),
                    fracwave::InvalidOrder);
    CHECK_THROWS_AS(make_problem(d, 0.5, 1.5, 0.0, zero, zero, {}),
                    fracwave::DomainError);
    CHECK_THROWS_AS(make_problem(d, 0.5, 1.5, 1.0, foreign, zero, {}),
                    fracwave::ValidationError);
    CHECK_THROWS_AS(
        make_problem(d, 0.5, 1.5, 1.0, zero, zero, std::vector<ModeForcing>(3)),
        fracwave::ValidationError);

    const FracWaveProblem p = make_problem(d, 0.5, 1.5, 1.0, zero, zero, {});
    CHECK_THROWS_AS(solve_mode(p, 0), fracwave::OutOfRange);
    CHECK_THROWS_AS(solve_mode(p, 3), fracwave::OutOfRange);
    CHECK_THROWS_AS(evaluate_solution(p, 0.5, 1.5), fracwave::DomainError);
    const std::vector<double> bad = {0.0, 0.5};
    CHECK_THROWS_AS(residual_check(p, 1, bad), fracwave::DomainError);
    const std::vector<double> short_grid = {0.1, 0.9};
    CHECK_THROWS_AS(energy_report(p, short_grid), fracwave::ValidationError);
}
