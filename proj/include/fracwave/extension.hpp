#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fracwave/bessel.hpp"
#include "fracwave/detail/gammafn.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/wavesolve.hpp"

namespace fracwave {

// Height profile of one extended mode: psi(y) = c_s (sqrt(lambda) y)^s
// K_s(sqrt(lambda) y), normalized so that psi(0) = 1.  At s = 1/2 the
// profile collapses to exp(-sqrt(lambda) y) and that closed form is used
// directly.
struct ExtensionProfile {
    double s = 0.5;
    double lambda = 1.0;
    double c_s = 1.0;  // 2^{1-s} / Gamma(s)
    double d_s = 1.0;  // 2^{1-2s} Gamma(1-s) / Gamma(s)
};

inline ExtensionProfile make_profile(double s, double lambda) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (!(lambda > 0.0)) throw DomainError("eigenvalue must be positive");
    ExtensionProfile pr;
    pr.s = s;
    pr.lambda = lambda;
    pr.c_s = std::pow(2.0, 1.0 - s) * detail::rgamma(s);
    pr.d_s = (s == 0.5)
        ? 1.0
        : std::pow(2.0, 1.0 - 2.0 * s) * std::tgamma(1.0 - s) * detail::rgamma(s);
    return pr;
}

namespace detail {

// Coefficient table of the derivative ladder
//   d^ell/dz^ell [c_s z^s K_s(z)] = c_s sum_m coef[m] z^{2m-ell} B_m(z),
//   B_m(z) = z^{s-m} K_{m-s}(z),
// one differentiation maps coef[m] into (2m-ell) coef[m] at slot m and
// -coef[m] at slot m+1.  All entries are integers; slot 0 is zero for
// every ell >= 1, which keeps the small-z evaluation free of the z^{-ell}
// Bessel branch.
inline const std::vector<double>& ladder_coeffs(int ell) {
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t;
        t.push_back({1.0});
        for (int l = 0; l < 8; ++l) {
            const std::vector<double>& cur = t[l];
            std::vector<double> nxt(cur.size() + 1, 0.0);
            for (std::size_t m = 0; m < cur.size(); ++m) {
                nxt[m] += (2.0 * m - l) * cur[m];
                nxt[m + 1] -= cur[m];
            }
            t.push_back(std::move(nxt));
        }
        return t;
    }();
    return table[ell];
}

// e^z d^ell psi/dz^ell of the unit-eigenvalue shape, one Bessel ladder
// per call.
inline double psi_shape_deriv_scaled(double s, int ell, double z) {
    const std::vector<double>& c = ladder_coeffs(ell);
    const std::vector<double> kk = bessel_k_ladder_scaled(s, ell, z);
    std::vector<double> terms(c.size(), 0.0);
    for (std::size_t m = 0; m < c.size(); ++m)
        if (c[m] != 0.0)
            terms[m] = c[m] * std::pow(z, s + static_cast<double>(m) - ell) * kk[m];
    return std::pow(2.0, 1.0 - s) * rgamma(s) * pairwise_sum(terms);
}

}  // namespace detail

// Shape at unit eigenvalue; the physical profile is
// psi(y) = psi_shape(s, sqrt(lambda) y).
inline double psi_shape(double s, double z) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (!(z >= 0.0)) throw DomainError("height must be non-negative");
    if (z == 0.0) return 1.0;
    if (s == 0.5) return std::exp(-z);
    return std::pow(2.0, 1.0 - s) * detail::rgamma(s) * std::pow(z, s)
        * bessel_k_scaled(s, z) * std::exp(-z);
}

// d^ell/dz^ell of the shape through the K recurrences; no finite
// differencing at any order.
inline double psi_shape_deriv(double s, int ell, double z) {
    if (ell < 0 || ell > 8)
        throw OutOfRange("derivative order must lie in [0, 8]");
    if (ell == 0) return psi_shape(s, z);
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (!(z > 0.0)) throw DomainError("shape derivatives require z > 0");
    return detail::psi_shape_deriv_scaled(s, ell, z) * std::exp(-z);
}

inline double psi(const ExtensionProfile& pr, double y) {
    if (!(y >= 0.0)) throw DomainError("height must be non-negative");
    if (y == 0.0) return 1.0;
    const double z = std::sqrt(pr.lambda) * y;
    if (pr.s == 0.5) return std::exp(-z);
    return pr.c_s * std::pow(z, pr.s) * bessel_k_scaled(pr.s, z) * std::exp(-z);
}

// d psi/dy through d/dz [z^s K_s(z)] = -z^s K_{1-s}(z).  At y = 0 the
// one-sided limit is returned; it is -infinity for s < 1/2.
inline double psi_prime(const ExtensionProfile& pr, double y) {
    if (!(y >= 0.0)) throw DomainError("height must be non-negative");
    const double rl = std::sqrt(pr.lambda);
    if (pr.s == 0.5) return -rl * std::exp(-rl * y);
    if (y == 0.0)
        return (pr.s > 0.5) ? 0.0 : -std::numeric_limits<double>::infinity();
    const double z = rl * y;
    return -pr.c_s * rl * std::pow(z, pr.s) * bessel_k_scaled(1.0 - pr.s, z)
        * std::exp(-z);
}

// Richardson extrapolation of y^alpha psi'(y) / (d_s lambda^s) on the
// halving grid y_j = y_0 2^{-j}.  The correction exponents alternate
// between 2k - 2s and 2k; the limit is -1.
inline double conormal_limit(const ExtensionProfile& pr, int levels = 10) {
    if (levels < 4 || levels > 20)
        throw OutOfRange("extrapolation depth must lie in [4, 20]");
    const double alpha = 1.0 - 2.0 * pr.s;
    const double scale = pr.d_s * std::pow(pr.lambda, pr.s);
    const double y0 = 0.5 / std::sqrt(pr.lambda);
    const double p[] = {2.0 - 2.0 * pr.s, 2.0, 4.0 - 2.0 * pr.s,
                        4.0, 6.0 - 2.0 * pr.s, 6.0};
    const int ncol = 6;
    std::vector<double> prev_row, row, diag;
    diag.reserve(levels);
    for (int j = 0; j < levels; ++j) {
        const double y = std::ldexp(y0, -j);
        row.assign(1, std::pow(y, alpha) * psi_prime(pr, y) / scale);
        const int mmax = std::min(j, ncol);
        for (int m = 1; m <= mmax; ++m)
            row.push_back(row[m - 1]
                          + (row[m - 1] - prev_row[m - 1])
                              / (std::exp2(p[m - 1]) - 1.0));
        diag.push_back(row.back());
        prev_row = row;
    }
    double best = diag.back();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < diag.size(); ++j) {
        const double gap = std::fabs(diag[j] - diag[j - 1]);
        if (gap <= best_gap) {
            best_gap = gap;
            best = diag[j];
        }
    }
    if (!(best_gap <= 1e-6 * (1.0 + std::fabs(best))))
        throw ExtrapolationDivergence("conormal table stopped contracting");
    return best;
}

// Weighted energy of one mode profile, integrated in the physical height
// variable.  Equals d_s lambda^s; the derivative part carries the endpoint
// exponent 2s - 1 rather than alpha, so the two head integrals are split.
inline double mode_energy(const ExtensionProfile& pr) {
    const double alpha = 1.0 - 2.0 * pr.s;
    const double y0 = 1.0 / std::sqrt(pr.lambda);
    const AdaptOpts o{1e-10, 0.0, 16, 14};
    const double head_u = integrate_singular_left(
        [&](double y) {
            const double v = psi(pr, y);
            return v * v;
        },
        alpha, y0, o);
    const double head_du = integrate_singular_left(
        [&](double y) {
            const double q = std::pow(y, 1.0 - 2.0 * pr.s) * psi_prime(pr, y);
            return q * q;
        },
        2.0 * pr.s - 1.0, y0, o);
    const double tail = integrate_tail(
        [&](double v) {
            const double y = y0 * v;
            const double a = psi(pr, y);
            const double b = psi_prime(pr, y);
            return y0 * std::pow(y, alpha) * (pr.lambda * a * a + b * b);
        },
        o);
    return pr.lambda * head_u + head_du + tail;
}

namespace detail {

// Shared preconditions of the weighted shape integrals; theta is held
// strictly inside the admissible interval because near-critical rates
// make the tail arbitrarily slow.
inline void check_weight(double s, double theta, double lambda,
                         double& lambda1) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (lambda1 <= 0.0) lambda1 = lambda;
    if (!(lambda >= lambda1))
        throw DomainError("eigenvalue must be at least the principal one");
    if (!(theta >= 0.0) || theta > 0.95 * 2.0 * std::sqrt(lambda1))
        throw DomainError(
            "weight rate theta must stay below 2 sqrt(lambda_1)");
}

inline AdaptOpts shape_quad_opts() { return AdaptOpts{1e-9, 1e-14, 16, 14}; }

}  // namespace detail

// Phi(delta, theta, lambda): mass of the squared shape against
// z^delta e^{theta z / sqrt(lambda)}.  Only the rate depends on lambda.
inline double phi_integral(double s, double delta, double theta,
                           double lambda, double lambda1 = 0.0) {
    detail::check_weight(s, theta, lambda, lambda1);
    if (delta <= -1.0) throw NonIntegrable("shape mass requires delta > -1");
    const double rate = theta / std::sqrt(lambda);
    const AdaptOpts o = detail::shape_quad_opts();
    const double cs = std::pow(2.0, 1.0 - s) * detail::rgamma(s);
    const double head = integrate_singular_left(
        [&](double z) {
            const double v = psi_shape(s, z);
            return std::exp(rate * z) * v * v;
        },
        delta, 1.0, o);
    const double tail = integrate_tail(
        [&](double z) {
            const double damp = std::exp((rate - 2.0) * z);
            if (damp == 0.0) return 0.0;
            const double v = (s == 0.5)
                ? 1.0
                : cs * std::pow(z, s) * bessel_k_scaled(s, z);
            return std::pow(z, delta) * v * v * damp;
        },
        o);
    return head + tail;
}

// Psi_ell(beta, theta, lambda): mass of the squared ell-th shape
// derivative against z^{beta + 2 ell} e^{theta z / sqrt(lambda)}.  The
// derivative behaves like z^{2s - ell} at the origin, so the endpoint
// exponent seen by the quadrature is beta + 4s.
inline double psi_integral(double s, int ell, double beta, double theta,
                           double lambda, double lambda1 = 0.0) {
    if (ell < 0 || ell > 8)
        throw OutOfRange("derivative order must lie in [0, 8]");
    if (ell == 0) return phi_integral(s, beta, theta, lambda, lambda1);
    detail::check_weight(s, theta, lambda, lambda1);
    if (beta <= -1.0 - 4.0 * s)
        throw NonIntegrable("derivative mass requires beta > -1 - 4s");
    const double rate = theta / std::sqrt(lambda);
    const AdaptOpts o = detail::shape_quad_opts();
    const double head = integrate_singular_left(
        [&](double z) {
            const double q = std::pow(z, ell - 2.0 * s)
                * detail::psi_shape_deriv_scaled(s, ell, z) * std::exp(-z);
            return q * q * std::exp(rate * z);
        },
        beta + 4.0 * s, 1.0, o);
    const double tail = integrate_tail(
        [&](double z) {
            const double damp = std::exp((rate - 2.0) * z);
            if (damp == 0.0) return 0.0;
            const double d = detail::psi_shape_deriv_scaled(s, ell, z);
            return std::pow(z, beta + 2.0 * ell) * d * d * damp;
        },
        o);
    return head + tail;
}

// Growth fit over ell = 1..ell_max of Psi_ell <= kappa^{2 ell} (ell!)^2.
// kappa_hat is clipped to stay above 1 so the normalized ratios remain
// bounded by one even when every raw ratio sits below the envelope; the
// flag records whether the fit itself crossed 1.
struct FactorialFitReport {
    double kappa_hat = 1.0;
    double raw_fit = 0.0;
    bool fit_attained = false;
    std::vector<double> psi_ell;  // Psi_0 .. Psi_ell_max
};

inline FactorialFitReport factorial_growth_fit(double s, double theta,
                                               double lambda, int ell_max,
                                               double beta = 0.0) {
    if (ell_max < 1 || ell_max > 8)
        throw OutOfRange("fit range must lie in [1, 8]");
    FactorialFitReport r;
    r.psi_ell.resize(ell_max + 1);
    // The ell = 0 moment diverges once beta reaches -1; the fit itself only
    // touches ell >= 1, so record the divergence instead of refusing.
    r.psi_ell[0] = beta > -1.0
                       ? phi_integral(s, beta, theta, lambda)
                       : std::numeric_limits<double>::infinity();
    double lfact = 1.0;
    for (int ell = 1; ell <= ell_max; ++ell) {
        lfact *= ell;
        r.psi_ell[ell] = psi_integral(s, ell, beta, theta, lambda);
        r.raw_fit = std::max(
            r.raw_fit,
            std::pow(r.psi_ell[ell] / (lfact * lfact), 0.5 / ell));
    }
    r.fit_attained = r.raw_fit > 1.0 + 1e-9;
    r.kappa_hat = std::max(r.raw_fit, 1.0 + 1e-9);
    return r;
}

// The extended field U(x', y, t) = sum_k u_k(t) phi_k(x') psi_k(y),
// carried as one profile per mode plus the weight parameters that norm
// evaluations are taken against.
struct ExtensionWeight {
    double beta = 0.0;
    double theta = 0.0;
};

struct ExtensionField {
    const FracWaveProblem* problem = nullptr;
    std::vector<ExtensionProfile> profiles;
    ExtensionWeight weight;
};

inline ExtensionField make_extension(const FracWaveProblem& p,
                                     double beta = 0.0, double theta = 0.0) {
    const double lam1 = p.domain->eigenvalues.front();
    if (!(theta >= 0.0) || theta > 0.95 * 2.0 * std::sqrt(lam1))
        throw DomainError(
            "weight rate theta must stay below 2 sqrt(lambda_1)");
    ExtensionField f;
    f.problem = &p;
    f.weight = ExtensionWeight{beta, theta};
    f.profiles.reserve(static_cast<std::size_t>(p.domain->n_modes));
    for (int k = 1; k <= p.domain->n_modes; ++k)
        f.profiles.push_back(make_profile(p.s, p.domain->eigenvalues[k - 1]));
    return f;
}

// At y = 0 every profile is exactly 1, so the trace reproduces
// evaluate_solution term by term.
inline double evaluate_extension(const ExtensionField& f, const Point& x,
                                 double y, double t) {
    const FracWaveProblem& p = *f.problem;
    if (!(y >= 0.0)) throw DomainError("height must be non-negative");
    if (!(t >= 0.0) || !(t <= p.T))
        throw DomainError("evaluation time must lie in [0, T]");
    const int n = p.domain->n_modes;
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        terms[k - 1] = solve_mode(p, k).u(t) * p.domain->efunc(k, x)
            * psi(f.profiles[k - 1], y);
    return pairwise_sum(terms);
}

inline double evaluate_extension(const ExtensionField& f, double x, double y,
                                 double t) {
    return evaluate_extension(f, Point{x, 0.0}, y, t);
}

// Squared weighted norm of the (ell+1)-st height derivative of the field
// at time t, taken against y^{alpha + 2 ell - 2 sigma} e^{theta y}.  Each
// mode contributes lambda^{s + sigma} Psi_{ell+1}(alpha - 2 sigma - 2).
inline double dy_norm_sq(const ExtensionField& f, int ell, double sigma,
                         double t) {
    const FracWaveProblem& p = *f.problem;
    if (!(sigma >= 0.0) || !(sigma < p.s))
        throw DomainError("weight shift sigma must lie in [0, s)");
    const double alpha = 1.0 - 2.0 * p.s;
    const double lam1 = p.domain->eigenvalues.front();
    const int n = p.domain->n_modes;
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double lam = p.domain->eigenvalues[k - 1];
        const double uk = solve_mode(p, k).u(t);
        terms[k - 1] = uk * uk * std::pow(lam, p.s + sigma)
            * psi_integral(p.s, ell + 1, alpha - 2.0 * sigma - 2.0,
                           f.weight.theta, lam, lam1);
    }
    return pairwise_sum(terms);
}

}  // namespace fracwave
