#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fracwave/discretization.hpp"
#include "fracwave/mlfunc.hpp"
#include "fracwave/spectral.hpp"

using fracwave::caputo_apply;
using fracwave::DegenerateFit;
using fracwave::DiscreteSolution;
using fracwave::discrete_schemes;
using fracwave::DomainError;
using fracwave::empirical_order;
using fracwave::frac_integral;
using fracwave::fully_discrete_solve;
using fracwave::GridNotUniform;
using fracwave::Interval;
using fracwave::InvalidOrder;
using fracwave::make_domain;
using fracwave::make_expansion;
using fracwave::make_grid;
using fracwave::make_problem;
using fracwave::ml;
using fracwave::ModeForcing;
using fracwave::SolveOptions;
using fracwave::stability_report;
using fracwave::TimeGrid;
using fracwave::uniform_grid;
using fracwave::unit_mode;
using fracwave::ValidationError;

namespace {

constexpr double kPi = std::numbers::pi;

double grid_l2(std::span<const double> v, const TimeGrid& g) {
    double acc = 0.0;
    for (std::size_t j = 1; j < g.nodes.size(); ++j) {
        const double step = g.nodes[j] - g.nodes[j - 1];
        acc += 0.5 * step * (v[j] * v[j] + v[j - 1] * v[j - 1]);
    }
    return std::sqrt(acc);
}

std::vector<double> sampled(const TimeGrid& g, double (*fn)(double)) {
    std::vector<double> out(g.nodes.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = fn(g.nodes[j]);
    return out;
}

}  // namespace

TEST_CASE("time grids validate their nodes") {
    const TimeGrid g = uniform_grid(2.0, 8);
    REQUIRE(g.nodes.size() == 9);
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == 2.0);
    CHECK(g.tau == Catch::Approx(0.25).epsilon(1e-15));

    const TimeGrid geo = make_grid({0.0, 0.1, 0.3, 0.7, 1.5});
    CHECK(geo.tau == Catch::Approx(0.8).epsilon(1e-15));

    CHECK_THROWS_AS(make_grid({0.0}), ValidationError);
    CHECK_THROWS_AS(make_grid({0.1, 0.2, 0.3}), ValidationError);
    CHECK_THROWS_AS(make_grid({0.0, 0.5, 0.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(make_grid({0.0, 0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(uniform_grid(1.0, 0), ValidationError);
    CHECK_THROWS_AS(uniform_grid(-1.0, 4), DomainError);
}

TEST_CASE("fractional integrals reproduce linear data exactly") {
    const TimeGrid g = uniform_grid(1.0, 64);
    const std::vector<double> one(g.nodes.size(), 1.0);

    const auto I1 = frac_integral(1.0, one, g);
    const auto Ih = frac_integral(0.5, one, g);
    std::vector<double> lin(g.nodes.size());
    for (std::size_t j = 0; j < lin.size(); ++j) lin[j] = g.nodes[j];
    const auto I15 = frac_integral(1.5, lin, g);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double t = g.nodes[j];
        CHECK(I1[j] == Catch::Approx(t).margin(1e-14));
        CHECK(Ih[j]
              == Catch::Approx(std::sqrt(t) / std::tgamma(1.5)).margin(1e-13));
        CHECK(I15[j]
              == Catch::Approx(std::pow(t, 2.5) / std::tgamma(3.5)).margin(1e-13));
    }

    const TimeGrid geo = make_grid({0.0, 0.05, 0.15, 0.4, 0.9, 2.0});
    std::vector<double> aff(geo.nodes.size());
    for (std::size_t j = 0; j < aff.size(); ++j) aff[j] = 2.0 * geo.nodes[j] + 1.0;
    const auto Igeo = frac_integral(0.5, aff, geo);
    for (std::size_t j = 0; j < geo.nodes.size(); ++j) {
        const double t = geo.nodes[j];
        const double exact = std::sqrt(t) / std::tgamma(1.5)
                             + 2.0 * std::pow(t, 1.5) / std::tgamma(2.5);
        CHECK(Igeo[j] == Catch::Approx(exact).margin(1e-13));
    }

    CHECK_THROWS_AS(frac_integral(0.0, one, g), InvalidOrder);
    CHECK_THROWS_AS(frac_integral(-0.5, one, g), InvalidOrder);
    CHECK_THROWS_AS(frac_integral(1.0, std::vector<double>(3, 1.0), g),
                    ValidationError);
    std::vector<double> bad(g.nodes.size(), 1.0);
    bad[5] = std::nan("");
    CHECK_THROWS_AS(frac_integral(1.0, bad, g), DomainError);
}

TEST_CASE("fractional integrals stay continuous on the unit horizon") {
    const TimeGrid g = uniform_grid(1.0, 128);
    const auto smp = sampled(g, +[](double t) {
        return 0.4 - 0.8 * std::sin(2.0 * kPi * t) + 0.6 * t * t;
    });
    const double data = grid_l2(smp, g);
    for (double sigma : {0.5, 1.0, 1.5}) {
        CAPTURE(sigma);
        const auto I = frac_integral(sigma, smp, g);
        const double bound = data / std::tgamma(sigma + 1.0);
        CHECK(grid_l2(I, g) <= bound * (1.0 + 5.0 * g.tau));
    }
}

TEST_CASE("fractional integrals compose on constants") {
    for (int J : {128, 256}) {
        CAPTURE(J);
        const TimeGrid g = uniform_grid(1.0, J);
        const std::vector<double> one(g.nodes.size(), 1.0);
        const auto comp = frac_integral(0.6, frac_integral(0.9, one, g), g);
        const auto direct = frac_integral(1.5, one, g);
        double diff = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j)
            diff = std::max(diff, std::abs(comp[j] - direct[j]));
        CHECK(diff <= g.tau);
    }
}

TEST_CASE("discrete caputo annihilates affine data") {
    const TimeGrid g = uniform_grid(1.0, 64);
    const auto aff = sampled(g, +[](double t) { return 3.0 - 2.0 * t; });
    const auto d = caputo_apply(1.5, aff, -2.0, g);
    for (double v : d) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("discrete caputo tracks the quadratic benchmark") {
    for (double gamma : {1.25, 1.75}) {
        CAPTURE(gamma);
        const TimeGrid g = uniform_grid(1.0, 256);
        const auto u = sampled(g, +[](double t) { return t * t; });
        const auto d = caputo_apply(gamma, u, 0.0, g);
        const double c = 2.0 / std::tgamma(3.0 - gamma);
        double node = 0.0, half = 0.0;
        for (std::size_t j = 2; j < g.nodes.size(); ++j) {
            if (g.nodes[j] < 0.25) continue;
            node = std::max(
                node, std::abs(d[j] - c * std::pow(g.nodes[j], 2.0 - gamma)));
            half = std::max(
                half,
                std::abs(d[j]
                         - c * std::pow(g.nodes[j] - 0.5 * g.tau, 2.0 - gamma)));
        }
        CHECK(node <= 2.0 * g.tau);
        CHECK(half <= g.tau * g.tau);
    }
}

TEST_CASE("mittag-leffler relaxation differentiates at the expected order") {
    for (double gamma : {1.25, 1.75}) {
        CAPTURE(gamma);
        std::vector<std::pair<double, double>> errs;
        for (int J : {64, 128, 256, 512}) {
            const TimeGrid g = uniform_grid(1.0, J);
            std::vector<double> u(g.nodes.size());
            for (std::size_t j = 0; j < u.size(); ++j)
                u[j] = ml(gamma, 1.0, -std::pow(g.nodes[j], gamma));
            const auto d = caputo_apply(gamma, u, 0.0, g);
            double l2 = 0.0;
            for (std::size_t j = 2; j < g.nodes.size(); ++j) {
                if (g.nodes[j] < 0.25) continue;
                const double th = g.nodes[j] - 0.5 * g.tau;
                const double e = d[j] + ml(gamma, 1.0, -std::pow(th, gamma));
                l2 += g.tau * e * e;
            }
            errs.emplace_back(g.tau, std::sqrt(l2));
        }
        CHECK(empirical_order(errs) >= 3.0 - gamma - 0.1);
        CHECK(errs.back().second <= 2e-4);
    }
}

TEST_CASE("discrete caputo validates inputs") {
    const TimeGrid geo = make_grid({0.0, 0.1, 0.3, 0.7});
    const std::vector<double> v(4, 1.0);
    CHECK_THROWS_AS(caputo_apply(1.5, v, 0.0, geo), GridNotUniform);
    const TimeGrid g = uniform_grid(1.0, 3);
    CHECK_THROWS_AS(caputo_apply(1.0, v, 0.0, g), InvalidOrder);
    CHECK_THROWS_AS(caputo_apply(2.0, v, 0.0, g), InvalidOrder);
}

TEST_CASE("the zero-eigenvalue probe stays constant") {
    const TimeGrid g = uniform_grid(1.0, 32);
    const auto U =
        fracwave::detail::discrete_mode(1.5, 0.0, 1.0, 0.0, nullptr, g, {});
    for (double v : U) CHECK(v == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("initial levels match the prescribed rules") {
    const TimeGrid g = uniform_grid(1.0, 16);
    const double tau = g.tau;
    ModeForcing fc;
    fc.f = [](double t) { return 1.0 + t; };
    const auto taylor = fracwave::detail::discrete_mode(1.4, 2.0, 0.7, -0.3,
                                                        fc.f, g, {});
    CHECK(taylor[0] == 0.7);
    const double start = 0.7 - 0.3 * tau
                         + std::pow(tau, 1.4) / std::tgamma(2.4)
                               * (1.0 - 2.0 * 0.7);
    CHECK(taylor[1] == Catch::Approx(start).margin(1e-14));

    SolveOptions bare;
    bare.init = "linear";
    const auto lin = fracwave::detail::discrete_mode(1.4, 2.0, 0.7, -0.3, fc.f,
                                                     g, bare);
    CHECK(lin[1] == Catch::Approx(0.7 - 0.3 * tau).margin(1e-14));
}

TEST_CASE("manufactured cubic solutions converge at three minus gamma") {
    for (double gamma : {1.5, 1.75}) {
        CAPTURE(gamma);
        const double cg = 6.0 / std::tgamma(4.0 - gamma);
        std::vector<std::pair<double, double>> errs;
        for (int J : {64, 128, 256, 512, 1024}) {
            const TimeGrid g = uniform_grid(1.0, J);
            const auto U = fracwave::detail::discrete_mode(
                gamma, 1.0, 0.0, 0.0,
                [=](double t) {
                    return cg * std::pow(t, 3.0 - gamma) + t * t * t;
                },
                g, {});
            double e = 0.0;
            for (std::size_t j = 0; j < g.nodes.size(); ++j)
                e = std::max(e, std::abs(U[j] - std::pow(g.nodes[j], 3.0)));
            errs.emplace_back(g.tau, e);
        }
        CHECK(empirical_order(errs)
              == Catch::Approx(3.0 - gamma).margin(0.1));
    }
}

TEST_CASE("the nodal pairing loses the fractional order") {
    const double gamma = 1.5;
    const double cg = 6.0 / std::tgamma(4.0 - gamma);
    SolveOptions nodal;
    nodal.scheme = "nodal";
    std::vector<std::pair<double, double>> errs;
    for (int J : {64, 128, 256, 512}) {
        const TimeGrid g = uniform_grid(1.0, J);
        const auto U = fracwave::detail::discrete_mode(
            gamma, 1.0, 0.0, 0.0,
            [=](double t) { return cg * std::pow(t, 3.0 - gamma) + t * t * t; },
            g, nodal);
        double e = 0.0;
        for (std::size_t j = 0; j < g.nodes.size(); ++j)
            e = std::max(e, std::abs(U[j] - std::pow(g.nodes[j], 3.0)));
        errs.emplace_back(g.tau, e);
    }
    const double fitted = empirical_order(errs);
    CHECK(fitted < 1.2);
    CHECK(fitted > 0.8);
}

TEST_CASE("rough data drops the observed order") {
    const double gamma = 1.5;
    std::vector<std::pair<double, double>> errs;
    for (int J : {64, 128, 256, 512, 1024}) {
        const TimeGrid g = uniform_grid(1.0, J);
        const auto U =
            fracwave::detail::discrete_mode(gamma, 1.0, 1.0, 0.0, nullptr, g, {});
        errs.emplace_back(g.tau, std::abs(U.back() - ml(gamma, 1.0, -1.0)));
    }
    CHECK(empirical_order(errs) < 3.0 - gamma - 0.2);

    const TimeGrid fine = uniform_grid(1.0, 1000);
    const auto U =
        fracwave::detail::discrete_mode(gamma, 1.0, 1.0, 0.0, nullptr, fine, {});
    CHECK(std::abs(U.back() - ml(gamma, 1.0, -1.0)) <= 5e-4);
}

TEST_CASE("fully discrete solves validate the pairing") {
    const auto dom = make_domain(Interval{kPi}, 2);
    auto p = make_problem(dom, 0.5, 1.5, 1.0, unit_mode(dom, 1),
                          make_expansion(dom, {0.0, 0.0}));
    CHECK(discrete_schemes()
          == std::vector<std::string>{"cn-halfstep", "nodal"});
    CHECK_THROWS_AS(fully_discrete_solve(p, uniform_grid(2.0, 8)),
                    ValidationError);
    SolveOptions bad;
    bad.scheme = "leapfrog";
    CHECK_THROWS_AS(fully_discrete_solve(p, uniform_grid(1.0, 8), bad),
                    ValidationError);
    SolveOptions badinit;
    badinit.init = "cold";
    CHECK_THROWS_AS(fully_discrete_solve(p, uniform_grid(1.0, 8), badinit),
                    ValidationError);
    auto wave = make_problem(dom, 0.5, 2.0, 1.0, unit_mode(dom, 1),
                             make_expansion(dom, {0.0, 0.0}));
    CHECK_THROWS_AS(fully_discrete_solve(wave, uniform_grid(1.0, 8)),
                    InvalidOrder);

    const auto sol = fully_discrete_solve(p, uniform_grid(1.0, 64));
    REQUIRE(sol.modes.size() == 2);
    CHECK(sol.scheme.name == "cn-halfstep");
    CHECK(sol.scheme.gamma == 1.5);
    CHECK(sol.modes[0][0] == 1.0);
    CHECK(sol.modes[1][0] == 0.0);
    const double tau = sol.grid.tau;
    const double start = 1.0 - std::pow(tau, 1.5) / std::tgamma(2.5);
    CHECK(sol.modes[0][1] == Catch::Approx(start).margin(1e-14));
}

TEST_CASE("empirical order fits synthetic slopes") {
    std::vector<std::pair<double, double>> errs;
    for (int l = 0; l < 5; ++l) {
        const double tau = std::pow(2.0, -3 - l);
        errs.emplace_back(tau, std::pow(tau, 1.5));
    }
    CHECK(empirical_order(errs) == Catch::Approx(1.5).margin(1e-3));

    auto grow = errs;
    grow[3].second = 10.0 * grow[2].second;
    CHECK_THROWS_AS(empirical_order(grow), DegenerateFit);

    CHECK_THROWS_AS(
        empirical_order(std::vector<std::pair<double, double>>{
            {0.1, 0.1}, {0.05, 0.05}}),
        DomainError);
    auto flat = errs;
    flat[1].second = -1.0;
    CHECK_THROWS_AS(empirical_order(flat), DomainError);
}

TEST_CASE("stability constants stay bounded under refinement") {
    const auto dom = make_domain(Interval{kPi}, 3);
    const auto zero = make_expansion(dom, {0.0, 0.0, 0.0});

    auto impulse = make_problem(dom, 0.4, 1.6, 1.0, unit_mode(dom, 1), zero);
    std::vector<double> ratios;
    for (int J : {128, 256}) {
        const auto sol = fully_discrete_solve(impulse, uniform_grid(1.0, J));
        ratios.push_back(stability_report(sol));
    }
    CHECK(ratios[0] > 0.05);
    CHECK(ratios[0] < 5.0);
    CHECK(std::abs(ratios[1] / ratios[0] - 1.0) <= 0.2);

    std::vector<ModeForcing> fm(1);
    fm[0].f = [](double) { return 1.0; };
    auto forced = make_problem(dom, 0.4, 1.6, 1.0, zero, zero, fm);
    const auto fsol = fully_discrete_solve(forced, uniform_grid(1.0, 128));
    const double fr = stability_report(fsol);
    CHECK(fr > 0.0);
    CHECK(fr < 5.0);

    auto rest = make_problem(dom, 0.4, 1.6, 1.0, zero, zero);
    CHECK(stability_report(fully_discrete_solve(rest, uniform_grid(1.0, 64)))
          == 0.0);
}

TEST_CASE("smooth test functions obey the derivative bound") {
    double prev2 = 0.0;
    for (int J : {128, 256}) {
        const TimeGrid g = uniform_grid(1.0, J);

        const auto u = sampled(g, +[](double t) { return std::sin(t); });
        const auto d = caputo_apply(1.5, u, 1.0, g);
        const auto w2 = sampled(g, +[](double t) { return -std::sin(t); });
        const auto w3 = sampled(g, +[](double t) { return -std::cos(t); });
        const double r2 = grid_l2(d, g) / grid_l2(w2, g);
        const double r3 = grid_l2(d, g) / grid_l2(w3, g);
        INFO("third-derivative ratio " << r3);
        CHECK(r2 < 1.5);
        CHECK(std::isfinite(r3));
        if (prev2 > 0.0) CHECK(std::abs(r2 - prev2) <= 0.05);
        prev2 = r2;

        const auto c = sampled(g, +[](double t) { return t * t * t; });
        const auto dc = caputo_apply(1.5, c, 0.0, g);
        const auto c2 = sampled(g, +[](double t) { return 6.0 * t; });
        CHECK(grid_l2(dc, g) / grid_l2(c2, g) < 1.5);
    }
}
