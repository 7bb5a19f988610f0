#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/mlfunc.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {

// Per-mode forcing f_k(t); null members mean identically zero.  The
// derivative callables are only consulted by consumers that need them.
struct ModeForcing {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
};

// Mode data for the time-fractional wave problem: time order gamma in (1, 2],
// spatial order s in (0, 1), horizon T, initial data g, h and per-mode
// forcing (entries beyond f_modes.size() are zero).
struct FracWaveProblem {
    const SpectralDomain* domain = nullptr;
    double s = 0.5;
    double gamma = 1.5;
    double T = 1.0;
    ModeExpansion g;
    ModeExpansion h;
    std::vector<ModeForcing> f_modes;
};

// Semi-analytic trajectory of one mode; each member is callable at any
// t in [0, T].
struct ModeTrajectory {
    int k = 0;
    std::function<double(double)> u;
    std::function<double(double)> du;
    std::function<double(double)> caputo_du;
};

namespace detail {

// Convolution tolerances.  The offset profile uses a different panel order
// than the primary one, so the caputo route re-evaluates the forcing
// integral on unrelated nodes; their agreement is what residual_check
// measures.
inline AdaptOpts conv_opts_primary() { return AdaptOpts{1e-11, 1e-13, 16, 14}; }
inline AdaptOpts conv_opts_offset() { return AdaptOpts{1e-12, 1e-14, 24, 14}; }

struct ScalarMode {
    double gamma;
    double lams;  // lambda_k^s; zero is permitted only in oracle probes
    double g;
    double h;
    ModeForcing force;
};

// int_0^t (t-r)^{gamma-1} E_{gamma,gamma}(-lams (t-r)^gamma) f(r) dr.
inline double conv_u(const ScalarMode& m, double t, const AdaptOpts& o) {
    if (!m.force.f || !(t > 0.0)) return 0.0;
    const auto& f = m.force.f;
    if (m.gamma == 2.0) {
        if (m.lams == 0.0)
            return integrate_adaptive(
                [&](double r) { return (t - r) * f(r); }, 0.0, t, o);
        const double w = std::sqrt(m.lams);
        return integrate_adaptive(
                   [&](double r) { return std::sin(w * (t - r)) * f(r); }, 0.0,
                   t, o)
            / w;
    }
    const double gamma = m.gamma, lams = m.lams;
    return integrate_singular_left(
        [&, gamma, lams, t](double xi) {
            return ml(gamma, gamma, -lams * std::pow(xi, gamma)) * f(t - xi);
        },
        gamma - 1.0, t, o);
}

// int_0^t (t-r)^{gamma-2} E_{gamma,gamma-1}(-lams (t-r)^gamma) f(r) dr.
inline double conv_du(const ScalarMode& m, double t, const AdaptOpts& o) {
    if (!m.force.f || !(t > 0.0)) return 0.0;
    const auto& f = m.force.f;
    if (m.gamma == 2.0) {
        if (m.lams == 0.0)
            return integrate_adaptive([&](double r) { return f(r); }, 0.0, t, o);
        const double w = std::sqrt(m.lams);
        return integrate_adaptive(
            [&](double r) { return std::cos(w * (t - r)) * f(r); }, 0.0, t, o);
    }
    const double gamma = m.gamma, lams = m.lams;
    return integrate_singular_left(
        [&, gamma, lams, t](double xi) {
            return ml(gamma, gamma - 1.0, -lams * std::pow(xi, gamma))
                * f(t - xi);
        },
        gamma - 2.0, t, o);
}

inline double mode_u(const ScalarMode& m, double t, const AdaptOpts& o) {
    if (t == 0.0) return m.g;
    if (m.gamma == 2.0) {
        if (m.lams == 0.0) return m.g + m.h * t + conv_u(m, t, o);
        const double w = std::sqrt(m.lams);
        return m.g * std::cos(w * t) + m.h * std::sin(w * t) / w
            + conv_u(m, t, o);
    }
    const double z = -m.lams * std::pow(t, m.gamma);
    return ml(m.gamma, 1.0, z) * m.g + t * ml(m.gamma, 2.0, z) * m.h
        + conv_u(m, t, o);
}

inline double mode_du(const ScalarMode& m, double t, const AdaptOpts& o) {
    if (t == 0.0) return m.h;
    if (m.gamma == 2.0) {
        if (m.lams == 0.0) return m.h + conv_du(m, t, o);
        const double w = std::sqrt(m.lams);
        return -m.g * w * std::sin(w * t) + m.h * std::cos(w * t)
            + conv_du(m, t, o);
    }
    const double z = -m.lams * std::pow(t, m.gamma);
    return -m.lams * std::pow(t, m.gamma - 1.0) * ml(m.gamma, m.gamma, z) * m.g
        + ml(m.gamma, 1.0, z) * m.h + conv_du(m, t, o);
}

// -lams (E_{gamma,1} g + t E_{gamma,2} h + conv) + f, with the convolution
// on the offset quadrature profile.
inline double mode_caputo(const ScalarMode& m, double t, const AdaptOpts& o) {
    const double fval = m.force.f ? m.force.f(t) : 0.0;
    if (m.lams == 0.0) return fval;
    double parts;
    if (m.gamma == 2.0) {
        const double w = std::sqrt(m.lams);
        parts = m.g * std::cos(w * t) + m.h * std::sin(w * t) / w
            + conv_u(m, t, o);
    } else {
        const double z = -m.lams * std::pow(t, m.gamma);
        parts = ml(m.gamma, 1.0, z) * m.g + t * ml(m.gamma, 2.0, z) * m.h
            + conv_u(m, t, o);
    }
    return -m.lams * parts + fval;
}

// Trajectory for one scalar mode ODE; lams = 0 is the closed-form oracle
// probe and is not reachable through a SpectralDomain.
inline ModeTrajectory solve_scalar(int k, ScalarMode m) {
    if (!(m.gamma > 1.0) || !(m.gamma <= 2.0))
        throw InvalidOrder("time order gamma must lie in (1, 2]");
    ModeTrajectory traj;
    traj.k = k;
    traj.u = [m](double t) { return mode_u(m, t, conv_opts_primary()); };
    traj.du = [m](double t) { return mode_du(m, t, conv_opts_primary()); };
    traj.caputo_du =
        [m](double t) { return mode_caputo(m, t, conv_opts_offset()); };
    return traj;
}

}  // namespace detail

inline FracWaveProblem make_problem(const SpectralDomain& domain, double s,
                                    double gamma, double T, ModeExpansion g,
                                    ModeExpansion h,
                                    std::vector<ModeForcing> f_modes = {}) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (!(gamma > 1.0) || !(gamma <= 2.0))
        throw InvalidOrder("time order gamma must lie in (1, 2]");
    if (!(T > 0.0)) throw DomainError("final time must be positive");
    if (g.domain != &domain || h.domain != &domain)
        throw ValidationError("initial data must live on the problem domain");
    if (static_cast<int>(f_modes.size()) > domain.n_modes)
        throw ValidationError("more forcing modes than domain modes");
    FracWaveProblem p;
    p.domain = &domain;
    p.s = s;
    p.gamma = gamma;
    p.T = T;
    p.g = std::move(g);
    p.h = std::move(h);
    p.f_modes = std::move(f_modes);
    return p;
}

inline ModeTrajectory solve_mode(const FracWaveProblem& p, int k) {
    if (k < 1 || k > p.domain->n_modes)
        throw OutOfRange("mode index out of range");
    detail::ScalarMode m;
    m.gamma = p.gamma;
    m.lams = std::pow(p.domain->eigenvalues[k - 1], p.s);
    m.g = (k <= static_cast<int>(p.g.coeffs.size())) ? p.g.coeffs[k - 1] : 0.0;
    m.h = (k <= static_cast<int>(p.h.coeffs.size())) ? p.h.coeffs[k - 1] : 0.0;
    if (k <= static_cast<int>(p.f_modes.size())) m.force = p.f_modes[k - 1];
    return detail::solve_scalar(k, std::move(m));
}

// sum_k u_k(t) phi_k(x') over the stored modes.
inline double evaluate_solution(const FracWaveProblem& p, const Point& x,
                                double t) {
    if (!(t >= 0.0) || !(t <= p.T))
        throw DomainError("evaluation time must lie in [0, T]");
    const int n = p.domain->n_modes;
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        terms[k - 1] = solve_mode(p, k).u(t) * p.domain->efunc(k, x);
    return pairwise_sum(terms);
}

inline double evaluate_solution(const FracWaveProblem& p, double x, double t) {
    return evaluate_solution(p, Point{x, 0.0}, t);
}

// max over the grid of |caputo_du + lambda_k^s u - f_k|; the caputo route
// integrates the forcing on offset nodes, so this certifies the
// representation formula rather than restating it.
inline double residual_check(const FracWaveProblem& p, int k,
                             std::span<const double> t_grid) {
    const ModeTrajectory traj = solve_mode(p, k);
    const double lams = std::pow(p.domain->eigenvalues[k - 1], p.s);
    const bool has_f = k <= static_cast<int>(p.f_modes.size())
        && static_cast<bool>(p.f_modes[k - 1].f);
    double worst = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0) || !(t <= p.T))
            throw DomainError("residual grid must lie in (0, T]");
        const double fval = has_f ? p.f_modes[k - 1].f(t) : 0.0;
        worst = std::max(worst,
                         std::fabs(traj.caputo_du(t) + lams * traj.u(t) - fval));
    }
    return worst;
}

// Empirical constants for the a-priori bounds: solution norms over the
// grid against the data norms, with the g-data measured both ways since
// the sharp space for it is unsettled.
struct EnergyReport {
    double sup_u_hs = 0.0;   // sup_t ||u(t)||_{H^s}
    double l2_du = 0.0;      // (int_0^T ||du||^2 dt)^{1/2}
    double sup_du = 0.0;     // sup_t ||du(t)||_{L2}
    double data_first = 0.0;      // ||f||_{L2 L2} + ||g||_{H^s} + ||h||
    double data_first_alt = 0.0;  // ||f||_{L2 L2} + ||g||_{H^2s} + ||h||
    double data_second = 0.0;     // ||f||_{Linf L2} + ||g||_{H^2s} + ||h||
    double ratio_first = 0.0;
    double ratio_first_alt = 0.0;
    double ratio_second = 0.0;
    double conservation_ratio = 0.0;  // max_t E(t) / E(0); exact at gamma = 2
};

inline EnergyReport energy_report(const FracWaveProblem& p,
                                  std::span<const double> t_grid) {
    const std::size_t nt = t_grid.size();
    if (nt < 2 || t_grid.front() != 0.0
        || std::fabs(t_grid.back() - p.T) > 1e-12 * p.T)
        throw ValidationError("time grid must cover [0, T]");
    for (std::size_t j = 1; j < nt; ++j)
        if (!(t_grid[j] > t_grid[j - 1]))
            throw ValidationError("time grid must increase");

    const int n = p.domain->n_modes;
    std::vector<ModeTrajectory> traj;
    traj.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) traj.push_back(solve_mode(p, k));

    std::vector<double> u_hs2(nt, 0.0), du_l2sq(nt, 0.0), f_l2sq(nt, 0.0);
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < nt; ++j) {
        const double t = t_grid[j];
        std::vector<double> a(n), b(n), c(n);
        for (int k = 1; k <= n; ++k) {
            const double lams = std::pow(p.domain->eigenvalues[k - 1], p.s);
            const double uk = traj[k - 1].u(t);
            a[k - 1] = lams * uk * uk;
            const double dk = traj[k - 1].du(t);
            b[k - 1] = dk * dk;
            const bool has_f = k <= static_cast<int>(p.f_modes.size())
                && static_cast<bool>(p.f_modes[k - 1].f);
            const double fk = has_f ? p.f_modes[k - 1].f(t) : 0.0;
            c[k - 1] = fk * fk;
        }
        u_hs2[j] = pairwise_sum(a);
        du_l2sq[j] = pairwise_sum(b);
        f_l2sq[j] = pairwise_sum(c);
    }

    auto trapezoid = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t j = 1; j < nt; ++j)
            acc += 0.5 * (v[j] + v[j - 1]) * (t_grid[j] - t_grid[j - 1]);
        return acc;
    };

    EnergyReport r;
    for (std::size_t j = 0; j < nt; ++j) {
        r.sup_u_hs = std::max(r.sup_u_hs, std::sqrt(u_hs2[j]));
        r.sup_du = std::max(r.sup_du, std::sqrt(du_l2sq[j]));
    }
    r.l2_du = std::sqrt(trapezoid(du_l2sq));
    const double f_l2 = std::sqrt(trapezoid(f_l2sq));
    double f_sup = 0.0;
    for (double v : f_l2sq) f_sup = std::max(f_sup, std::sqrt(v));
    const double g_hs = hs_norm(p.g, p.s);
    const double g_h2s = hs_norm(p.g, 2.0 * p.s);
    const double h_l2 = hs_norm(p.h, 0.0);
    r.data_first = f_l2 + g_hs + h_l2;
    r.data_first_alt = f_l2 + g_h2s + h_l2;
    r.data_second = f_sup + g_h2s + h_l2;

    const double lhs_first =
        (p.gamma == 2.0) ? r.sup_u_hs + r.sup_du : r.sup_u_hs + r.l2_du;
    auto ratio = [](double lhs, double rhs) {
        return rhs > 0.0 ? lhs / rhs : 0.0;
    };
    r.ratio_first = ratio(lhs_first, r.data_first);
    r.ratio_first_alt = ratio(lhs_first, r.data_first_alt);
    r.ratio_second = ratio(r.sup_du, r.data_second);

    const double e0 = u_hs2.front() + du_l2sq.front();
    if (e0 > 0.0) {
        double emax = 0.0;
        for (std::size_t j = 0; j < nt; ++j)
            emax = std::max(emax, u_hs2[j] + du_l2sq[j]);
        r.conservation_ratio = emax / e0;
    }
    return r;
}

}  // namespace fracwave
