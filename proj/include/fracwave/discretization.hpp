#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/wavesolve.hpp"

namespace fracwave {

// Time partition 0 = t_0 < t_1 < ... < t_J = T; tau is the largest step.
struct TimeGrid {
    std::vector<double> nodes;
    double tau = 0.0;
};

inline TimeGrid make_grid(std::vector<double> nodes) {
    if (nodes.size() < 2)
        throw ValidationError("time grid needs at least two nodes");
    if (nodes.front() != 0.0)
        throw ValidationError("time grid must start at zero");
    TimeGrid g;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        const double step = nodes[j] - nodes[j - 1];
        if (!(step > 0.0))
            throw ValidationError("time grid nodes must increase strictly");
        g.tau = std::max(g.tau, step);
    }
    g.nodes = std::move(nodes);
    return g;
}

inline TimeGrid uniform_grid(double T, int steps) {
    if (!(T > 0.0)) throw DomainError("horizon must be positive");
    if (steps < 1) throw ValidationError("step count must be positive");
    std::vector<double> nodes(steps + 1);
    for (int j = 0; j <= steps; ++j)
        nodes[j] = T * static_cast<double>(j) / steps;
    nodes[steps] = T;
    return make_grid(std::move(nodes));
}

namespace detail {

inline bool grid_is_uniform(const TimeGrid& g) {
    const double tau = g.nodes[1] - g.nodes[0];
    for (std::size_t j = 1; j < g.nodes.size(); ++j)
        if (std::abs(g.nodes[j] - g.nodes[j - 1] - tau) > 1e-12 * g.tau)
            return false;
    return true;
}

// Kernel weights b_k = ((k+1)^{2-gamma} - k^{2-gamma}) tau^{2-gamma} / Gamma(3-gamma).
// b_k is the mass of (t_j - r)^{1-gamma}/Gamma(2-gamma) over the step at lag k,
// so sum_{k<j} b_k telescopes to t_j^{2-gamma}/Gamma(3-gamma).
inline std::vector<double> caputo_weights(double gamma, double tau, int count) {
    const double scale = std::pow(tau, 2.0 - gamma) / std::tgamma(3.0 - gamma);
    std::vector<double> b(count);
    for (int k = 0; k < count; ++k)
        b[k] = (std::pow(k + 1.0, 2.0 - gamma) - std::pow(static_cast<double>(k), 2.0 - gamma)) * scale;
    return b;
}

}  // namespace detail

// Left Riemann-Liouville integral I^sigma[g] at the grid nodes.  The kernel
// moment over each step is taken in closed form against the piecewise-linear
// interpolant, so polynomial data of degree <= 1 comes out exact; nonuniform
// grids are fine here.
inline std::vector<double> frac_integral(double sigma, std::span<const double> g,
                                         const TimeGrid& grid) {
    if (!(sigma > 0.0)) throw InvalidOrder("integral order must be positive");
    if (g.size() != grid.nodes.size())
        throw ValidationError("sample count must match the grid");
    for (double v : g)
        if (!std::isfinite(v)) throw DomainError("samples must be finite");
    const std::size_t J = grid.nodes.size() - 1;
    const double rg = 1.0 / std::tgamma(sigma);
    std::vector<double> out(J + 1, 0.0);
    std::vector<double> terms;
    terms.reserve(J);
    for (std::size_t j = 1; j <= J; ++j) {
        terms.clear();
        for (std::size_t i = 1; i <= j; ++i) {
            const double A = grid.nodes[j] - grid.nodes[i - 1];
            const double B = grid.nodes[j] - grid.nodes[i];
            const double slope = (g[i] - g[i - 1]) / (grid.nodes[i] - grid.nodes[i - 1]);
            const double c0 = g[i - 1] + slope * A;
            terms.push_back(c0 * (std::pow(A, sigma) - std::pow(B, sigma)) / sigma -
                            slope * (std::pow(A, sigma + 1.0) - std::pow(B, sigma + 1.0)) /
                                (sigma + 1.0));
        }
        out[j] = rg * pairwise_sum(terms);
    }
    return out;
}

// Discrete Caputo operator: second differences of the samples against the
// caputo_weights kernel masses.  The first step's difference quotient leans
// on the prescribed initial slope du0.  Slot j approximates the derivative
// at the half level t_{j-1/2}; slot 0 is zero by convention.
inline std::vector<double> caputo_apply(double gamma, std::span<const double> u,
                                        double du0, const TimeGrid& grid) {
    if (!(gamma > 1.0) || !(gamma < 2.0))
        throw InvalidOrder("time order gamma must lie in (1, 2)");
    if (u.size() != grid.nodes.size())
        throw ValidationError("sample count must match the grid");
    if (!detail::grid_is_uniform(grid))
        throw GridNotUniform("discrete caputo weights require a uniform grid");
    const int J = static_cast<int>(grid.nodes.size()) - 1;
    const double tau = grid.nodes[1] - grid.nodes[0];
    const std::vector<double> b = detail::caputo_weights(gamma, tau, J);
    std::vector<double> d2(J + 1, 0.0);
    d2[1] = (u[1] - u[0] - tau * du0) / (tau * tau);
    for (int m = 2; m <= J; ++m)
        d2[m] = (u[m] - 2.0 * u[m - 1] + u[m - 2]) / (tau * tau);
    std::vector<double> out(J + 1, 0.0);
    std::vector<double> terms(J);
    for (int j = 1; j <= J; ++j) {
        for (int m = 1; m <= j; ++m) terms[m - 1] = b[j - m] * d2[m];
        out[j] = pairwise_sum(std::span<const double>(terms.data(), j));
    }
    return out;
}

// Scheme registry.  "cn-halfstep" balances the half-level character of the
// discrete caputo operator with averaged stiffness and midpoint forcing;
// "nodal" pairs the same operator with nodal stiffness and forcing.
inline std::vector<std::string> discrete_schemes() {
    return {"cn-halfstep", "nodal"};
}

struct SolveOptions {
    std::string scheme = "cn-halfstep";
    std::string init = "fractional-taylor";  // or "linear"
};

struct SchemeDescriptor {
    std::string name;
    double gamma = 0.0;
    double tau = 0.0;
};

struct DiscreteSolution {
    const FracWaveProblem* problem = nullptr;
    TimeGrid grid;
    std::vector<std::vector<double>> modes;  // modes[k-1][j] = U_k^j
    SchemeDescriptor scheme;
};

namespace detail {

// One modal recurrence U^j, j = 0..J.  kappa = lambda_k^s; zero is permitted
// only in synthetic probes.  An empty forcing callable means f = 0.
inline std::vector<double> discrete_mode(double gamma, double kappa, double g,
                                         double h,
                                         const std::function<double(double)>& f,
                                         const TimeGrid& grid,
                                         const SolveOptions& opt) {
    if (!(gamma > 1.0) || !(gamma < 2.0))
        throw InvalidOrder("time order gamma must lie in (1, 2)");
    if (!grid_is_uniform(grid))
        throw GridNotUniform("the fully discrete scheme requires a uniform grid");
    const bool halfstep = opt.scheme == "cn-halfstep";
    if (!halfstep && opt.scheme != "nodal")
        throw ValidationError("scheme must be one of cn-halfstep, nodal");
    const bool taylor = opt.init == "fractional-taylor";
    if (!taylor && opt.init != "linear")
        throw ValidationError("init must be one of fractional-taylor, linear");
    const int J = static_cast<int>(grid.nodes.size()) - 1;
    const double tau = grid.nodes[1] - grid.nodes[0];
    const double tau2 = tau * tau;
    const std::vector<double> b = caputo_weights(gamma, tau, J);
    std::vector<double> U(J + 1, 0.0);
    std::vector<double> d2(J + 1, 0.0);
    U[0] = g;
    const double f0 = f ? f(0.0) : 0.0;
    U[1] = g + tau * h;
    if (taylor)
        U[1] += std::pow(tau, gamma) / std::tgamma(1.0 + gamma) * (f0 - kappa * g);
    if (J >= 1) d2[1] = (U[1] - U[0] - tau * h) / tau2;
    std::vector<double> terms(J);
    for (int j = 2; j <= J; ++j) {
        for (int m = 1; m < j; ++m) terms[m - 1] = b[j - m] * d2[m];
        const double history =
            pairwise_sum(std::span<const double>(terms.data(), j - 1));
        double lhs, rhs;
        if (halfstep) {
            const double tmid = 0.5 * (grid.nodes[j] + grid.nodes[j - 1]);
            lhs = b[0] / tau2 + 0.5 * kappa;
            rhs = (f ? f(tmid) : 0.0) - 0.5 * kappa * U[j - 1] - history -
                  b[0] * (U[j - 2] - 2.0 * U[j - 1]) / tau2;
        } else {
            lhs = b[0] / tau2 + kappa;
            rhs = (f ? f(grid.nodes[j]) : 0.0) - history -
                  b[0] * (U[j - 2] - 2.0 * U[j - 1]) / tau2;
        }
        if (!(lhs > 0.0)) throw SingularStep("implicit step weight vanished");
        U[j] = rhs / lhs;
        d2[j] = (U[j] - 2.0 * U[j - 1] + U[j - 2]) / tau2;
    }
    return U;
}

}  // namespace detail

inline DiscreteSolution fully_discrete_solve(const FracWaveProblem& p,
                                             const TimeGrid& grid,
                                             const SolveOptions& opt = {}) {
    if (std::abs(grid.nodes.back() - p.T) > 1e-12 * p.T)
        throw ValidationError("grid horizon must match the problem");
    DiscreteSolution sol;
    sol.problem = &p;
    sol.grid = grid;
    sol.scheme = {opt.scheme, p.gamma, grid.tau};
    const int n = p.domain->n_modes;
    sol.modes.reserve(n);
    for (int k = 1; k <= n; ++k) {
        const double kappa = std::pow(p.domain->eigenvalues[k - 1], p.s);
        const double g = (k <= static_cast<int>(p.g.coeffs.size())) ? p.g.coeffs[k - 1] : 0.0;
        const double h = (k <= static_cast<int>(p.h.coeffs.size())) ? p.h.coeffs[k - 1] : 0.0;
        std::function<double(double)> f;
        if (k <= static_cast<int>(p.f_modes.size())) f = p.f_modes[k - 1].f;
        sol.modes.push_back(detail::discrete_mode(p.gamma, kappa, g, h, f, grid, opt));
    }
    return sol;
}

// Least-squares slope of log error against log step.  A level whose error
// more than doubles while the step shrinks marks the sweep degenerate.
inline double empirical_order(std::span<const std::pair<double, double>> errs) {
    if (errs.size() < 3)
        throw DomainError("order fit needs at least three levels");
    std::vector<std::pair<double, double>> pts(errs.begin(), errs.end());
    for (const auto& [tau, err] : pts)
        if (!(tau > 0.0) || !(err > 0.0))
            throw DomainError("steps and errors must be positive");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].second > 2.0 * pts[i - 1].second)
            throw DegenerateFit("errors grow under refinement");
    double sx = 0.0, sy = 0.0;
    for (const auto& [tau, err] : pts) {
        sx += std::log(tau);
        sy += std::log(err);
    }
    const double mx = sx / pts.size(), my = sy / pts.size();
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [tau, err] : pts) {
        const double dx = std::log(tau) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (!(sxx > 0.0)) throw DegenerateFit("step sizes are not distinct");
    return sxy / sxx;
}

// Empirical stability constant: the discrete solution norm in
// L^2(0,T; H^s) against the forcing norm in L^2(0,T; H^{-s}) plus the
// norms of the initial data.  Zero data reports zero.
inline double stability_report(const DiscreteSolution& sol) {
    const FracWaveProblem& p = *sol.problem;
    const std::size_t J = sol.grid.nodes.size() - 1;
    std::vector<double> tw(J + 1, 0.0);
    for (std::size_t j = 1; j <= J; ++j) {
        const double step = sol.grid.nodes[j] - sol.grid.nodes[j - 1];
        tw[j - 1] += 0.5 * step;
        tw[j] += 0.5 * step;
    }
    double num = 0.0, ff = 0.0;
    for (std::size_t j = 0; j <= J; ++j) {
        double us = 0.0, fs = 0.0;
        for (int k = 1; k <= p.domain->n_modes; ++k) {
            const double ls = std::pow(p.domain->eigenvalues[k - 1], p.s);
            const double uk = sol.modes[k - 1][j];
            us += ls * uk * uk;
            if (k <= static_cast<int>(p.f_modes.size()) && p.f_modes[k - 1].f) {
                const double fk = p.f_modes[k - 1].f(sol.grid.nodes[j]);
                fs += fk * fk / ls;
            }
        }
        num += tw[j] * us;
        ff += tw[j] * fs;
    }
    const double denom = std::sqrt(ff) + hs_norm(p.g, p.s) + hs_norm(p.h, 0.0);
    if (denom == 0.0) return 0.0;
    return std::sqrt(num) / denom;
}

}  // namespace fracwave
