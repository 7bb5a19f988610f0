#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "fracwave/errors.hpp"

namespace fracwave {

// Nodes and weights on the reference interval [-1, 1].
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b.  Nodes are the
// eigenvalues of the symmetrized three-term recurrence matrix, weights are
// mu0 times the squared first eigenvector components.
inline QuadRule make_jacobi_rule(int n, double a, double b) {
    if (n < 1) throw OutOfRange("quadrature order must be positive");
    if (a <= -1.0 || b <= -1.0)
        throw NonIntegrable("jacobi exponents must exceed -1");
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double alpha;
        if (k == 0) {
            alpha = (b - a) / (ab + 2.0);
        } else {
            const double d = 2.0 * k + ab;
            alpha = (b * b - a * a) / (d * (d + 2.0));
        }
        T(k, k) = alpha;
    }
    for (int k = 1; k < n; ++k) {
        double beta;
        if (k == 1) {
            beta = 4.0 * (a + 1.0) * (b + 1.0)
                / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        } else {
            const double d = 2.0 * k + ab;
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab)
                / (d * d * (d + 1.0) * (d - 1.0));
        }
        T(k, k - 1) = T(k - 1, k) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0)
                                + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        r.w[k] = mu0 * v * v;
    }
    return r;
}

inline std::uint64_t key_bits(double v) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(v));
    std::memcpy(&u, &v, sizeof(u));
    return u;
}

}  // namespace detail

// Cached Gauss-Jacobi rule; (a, b) = (0, 0) is Gauss-Legendre.
inline const QuadRule& jacobi_rule(int n, double a, double b) {
    using Key = std::tuple<int, std::uint64_t, std::uint64_t>;
    static std::map<Key, std::unique_ptr<QuadRule>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{n, detail::key_bits(a), detail::key_bits(b)}];
    if (!slot) slot = std::make_unique<QuadRule>(detail::make_jacobi_rule(n, a, b));
    return *slot;
}

inline const QuadRule& legendre_rule(int n) { return jacobi_rule(n, 0.0, 0.0); }

// Deterministic pairwise reduction; summation order depends only on the
// element order, never on thread scheduling.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

// Single Gauss-Legendre panel on [lo, hi].
template <class F>
double gl_panel(F&& f, double lo, double hi, int n) {
    const QuadRule& r = legendre_rule(n);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    std::vector<double> t(r.x.size());
    for (std::size_t i = 0; i < r.x.size(); ++i)
        t[i] = r.w[i] * f(c + h * r.x[i]);
    return h * pairwise_sum(t);
}

// int_0^eps z^eta g(z) dz with the endpoint power integrated exactly.
template <class F>
double gj_left_panel(F&& g, double eta, double eps, int n) {
    const QuadRule& r = jacobi_rule(n, 0.0, eta);
    const double h = 0.5 * eps;
    std::vector<double> t(r.x.size());
    for (std::size_t i = 0; i < r.x.size(); ++i)
        t[i] = r.w[i] * g(h * (1.0 + r.x[i]));
    return std::pow(h, eta + 1.0) * pairwise_sum(t);
}

struct AdaptOpts {
    double rel_tol = 1e-9;
    double abs_floor = 0.0;   // differences below this count as converged
    int gauss_n = 16;
    int max_doublings = 14;
};

// Composite Gauss-Legendre over [a, b], panel count doubled until the
// refinement difference stalls below tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, const AdaptOpts& o = {}) {
    if (!(b > a)) return 0.0;
    double prev = gl_panel(f, a, b, o.gauss_n);
    int panels = 2;
    for (int lvl = 0; lvl < o.max_doublings; ++lvl, panels *= 2) {
        std::vector<double> parts(panels);
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            parts[p] = gl_panel(f, a + p * h, a + (p + 1) * h, o.gauss_n);
        const double cur = pairwise_sum(parts);
        const double diff = std::fabs(cur - prev);
        if (diff <= o.rel_tol * std::fabs(cur) + o.abs_floor) return cur;
        prev = cur;
    }
    throw QuadratureFailure("composite Gauss-Legendre did not stall");
}

// int_0^b z^eta g(z) dz for eta > -1, g bounded at 0 (fractional-power
// corrections allowed).  Dyadic panels toward 0; the innermost panel uses
// Gauss-Jacobi with the exact endpoint exponent.
template <class F>
double integrate_singular_left(F&& g, double eta, double b,
                               const AdaptOpts& o = {}) {
    if (eta <= -1.0)
        throw NonIntegrable("endpoint exponent must exceed -1");
    if (!(b > 0.0)) return 0.0;
    auto with_weight = [&](double z) { return std::pow(z, eta) * g(z); };
    double prev = 0.0;
    bool have_prev = false;
    for (int depth = 6; depth <= 42; depth += 6) {
        std::vector<double> parts;
        parts.reserve(depth + 1);
        double edge = b * std::ldexp(1.0, -depth);
        parts.push_back(gj_left_panel(g, eta, edge, 2 * o.gauss_n));
        for (int j = depth; j >= 1; --j) {
            const double lo = b * std::ldexp(1.0, -j);
            const double hi = b * std::ldexp(1.0, -(j - 1));
            parts.push_back(gl_panel(with_weight, lo, hi, 2 * o.gauss_n));
        }
        const double cur = pairwise_sum(parts);
        if (have_prev
            && std::fabs(cur - prev) <= o.rel_tol * std::fabs(cur) + o.abs_floor)
            return cur;
        prev = cur;
        have_prev = true;
    }
    throw QuadratureFailure("singular-endpoint quadrature did not stall");
}

// int_1^inf f(z) dz through z = 1 + w/(1-w); f must decay exponentially.
template <class F>
double integrate_tail(F&& f, const AdaptOpts& o = {}) {
    auto mapped = [&](double w) {
        const double om = 1.0 - w;
        return f(1.0 + w / om) / (om * om);
    };
    return integrate_adaptive(mapped, 0.0, 1.0, o);
}

}  // namespace fracwave
