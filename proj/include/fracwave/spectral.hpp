#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fracwave/detail/gammafn.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

enum class DomainKind { Interval, Rectangle, UserSupplied };

// Spatial point; the second coordinate is ignored on 1-d domains.
using Point = std::array<double, 2>;

// Interval (0, L) with Dirichlet eigenpairs lambda_k = (k pi / L)^2,
// phi_k = sqrt(2/L) sin(k pi x / L).  quad_points = 0 sizes the stored
// quadrature from the mode count.
struct Interval {
    double length;
    int quad_points = 0;
};

// Rectangle (0, Lx) x (0, Ly); tensor eigenpairs ordered by ascending
// eigenvalue, exact ties broken lexicographically in (k_x, k_y).
// quad_points = 0 sizes the per-axis quadrature from the mode indices used.
struct Rectangle {
    double lx;
    double ly;
    int quad_points = 0;
};

// Escape hatch for eigenpairs computed offline.  The basis must be
// L2-orthonormal under the supplied quadrature; mode indices are 1-based.
struct UserSupplied {
    int dim = 1;
    std::vector<double> eigenvalues;
    std::function<double(int, const Point&)> eigenfunction;
    std::vector<Point> quad_x;
    std::vector<double> quad_w;
};

// Immutable after construction; all operations on it are pure.
struct SpectralDomain {
    DomainKind kind;
    int dim;
    int n_modes;
    std::vector<double> eigenvalues;             // positive, nondecreasing
    std::vector<std::array<int, 2>> mode_index;  // per-axis indices, {k, 0} in 1-d
    std::vector<Point> quad_x;
    std::vector<double> quad_w;
    int quad_nx = 0;  // per-axis node counts; 0 disables the resolution rule
    int quad_ny = 0;
    int kmax_x = 0;  // largest per-axis mode index in use
    int kmax_y = 0;
    std::function<double(int, const Point&)> efunc;

    double eigenfunction(int k, const Point& p) const {
        if (k < 1 || k > n_modes) throw OutOfRange("mode index out of range");
        return efunc(k, p);
    }
    double eigenfunction(int k, double x) const {
        return eigenfunction(k, Point{x, 0.0});
    }
    double eigenfunction(int k, double x, double y) const {
        return eigenfunction(k, Point{x, y});
    }
};

// Coefficients w_k against the domain's eigenbasis.  May store fewer modes
// than the domain carries, never more.
struct ModeExpansion {
    const SpectralDomain* domain = nullptr;
    std::vector<double> coeffs;
};

namespace detail {

// Composite Gauss-Legendre nodes on (0, L): `panels` panels of 16 points.
inline void composite_gl_axis(double L, int panels, std::vector<double>& x,
                              std::vector<double>& w) {
    const QuadRule& r = legendre_rule(16);
    x.clear();
    w.clear();
    x.reserve(16 * panels);
    w.reserve(16 * panels);
    const double h = L / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * h;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            x.push_back(c + 0.5 * h * r.x[i]);
            w.push_back(0.5 * h * r.w[i]);
        }
    }
}

inline int panels_for(int requested_points, int modes) {
    if (requested_points > 0)
        return std::max(1, (requested_points + 15) / 16);
    return std::max(2, modes);
}

}  // namespace detail

// Largest entry of |Gram - I| for the stored basis under the stored
// quadrature.
inline double gram_defect(const SpectralDomain& d) {
    const int n = d.n_modes;
    const int nq = static_cast<int>(d.quad_x.size());
    Eigen::MatrixXd phi(nq, n);
    for (int k = 1; k <= n; ++k)
        for (int q = 0; q < nq; ++q) phi(q, k - 1) = d.efunc(k, d.quad_x[q]);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(d.quad_w.data(), nq);
    Eigen::MatrixXd g = phi.transpose() * w.asDiagonal() * phi;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

inline SpectralDomain make_domain(const Interval& iv, int n_modes) {
    if (n_modes < 1) throw OutOfRange("mode count must be positive");
    if (!(iv.length > 0.0)) throw DomainError("interval length must be positive");
    SpectralDomain d;
    d.kind = DomainKind::Interval;
    d.dim = 1;
    d.n_modes = n_modes;
    const double L = iv.length;
    const double freq = detail::kPi / L;
    d.eigenvalues.resize(n_modes);
    d.mode_index.resize(n_modes);
    for (int k = 1; k <= n_modes; ++k) {
        const double rt = freq * k;
        d.eigenvalues[k - 1] = rt * rt;
        d.mode_index[k - 1] = {k, 0};
    }
    std::vector<double> ax, aw;
    detail::composite_gl_axis(L, detail::panels_for(iv.quad_points, n_modes),
                              ax, aw);
    d.quad_x.resize(ax.size());
    for (std::size_t i = 0; i < ax.size(); ++i) d.quad_x[i] = {ax[i], 0.0};
    d.quad_w = std::move(aw);
    d.quad_nx = static_cast<int>(d.quad_x.size());
    d.kmax_x = n_modes;
    const double amp = std::sqrt(2.0 / L);
    d.efunc = [amp, freq](int k, const Point& p) {
        return amp * std::sin(freq * k * p[0]);
    };
    return d;
}

inline SpectralDomain make_domain(const Rectangle& rc, int n_modes) {
    if (n_modes < 1) throw OutOfRange("mode count must be positive");
    if (!(rc.lx > 0.0) || !(rc.ly > 0.0))
        throw DomainError("rectangle sides must be positive");
    const double fx = detail::kPi / rc.lx;
    const double fy = detail::kPi / rc.ly;
    const double bx = fx * fx, by = fy * fy;
    struct Cand {
        double lambda;
        int kx, ky;
    };
    std::vector<Cand> cand;
    cand.reserve(static_cast<std::size_t>(n_modes) * n_modes);
    for (int kx = 1; kx <= n_modes; ++kx)
        for (int ky = 1; ky <= n_modes; ++ky)
            cand.push_back({bx * kx * kx + by * ky * ky, kx, ky});
    std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
        return std::tie(a.lambda, a.kx, a.ky) < std::tie(b.lambda, b.kx, b.ky);
    });
    SpectralDomain d;
    d.kind = DomainKind::Rectangle;
    d.dim = 2;
    d.n_modes = n_modes;
    d.eigenvalues.resize(n_modes);
    d.mode_index.resize(n_modes);
    for (int i = 0; i < n_modes; ++i) {
        d.eigenvalues[i] = cand[i].lambda;
        d.mode_index[i] = {cand[i].kx, cand[i].ky};
        d.kmax_x = std::max(d.kmax_x, cand[i].kx);
        d.kmax_y = std::max(d.kmax_y, cand[i].ky);
    }
    std::vector<double> x1, w1, x2, w2;
    detail::composite_gl_axis(rc.lx, detail::panels_for(rc.quad_points, d.kmax_x),
                              x1, w1);
    detail::composite_gl_axis(rc.ly, detail::panels_for(rc.quad_points, d.kmax_y),
                              x2, w2);
    d.quad_nx = static_cast<int>(x1.size());
    d.quad_ny = static_cast<int>(x2.size());
    d.quad_x.reserve(x1.size() * x2.size());
    d.quad_w.reserve(x1.size() * x2.size());
    for (std::size_t i = 0; i < x1.size(); ++i)
        for (std::size_t j = 0; j < x2.size(); ++j) {
            d.quad_x.push_back({x1[i], x2[j]});
            d.quad_w.push_back(w1[i] * w2[j]);
        }
    const double amp = std::sqrt(4.0 / (rc.lx * rc.ly));
    auto modes = d.mode_index;
    d.efunc = [amp, fx, fy, modes = std::move(modes)](int k, const Point& p) {
        const auto [kx, ky] = modes[k - 1];
        return amp * std::sin(fx * kx * p[0]) * std::sin(fy * ky * p[1]);
    };
    return d;
}

inline SpectralDomain make_domain(UserSupplied us) {
    const int n = static_cast<int>(us.eigenvalues.size());
    if (n < 1) throw OutOfRange("mode count must be positive");
    if (us.dim != 1 && us.dim != 2)
        throw DomainError("domain dimension must be 1 or 2");
    if (!us.eigenfunction)
        throw DomainError("user-supplied domain needs an eigenfunction evaluator");
    if (us.quad_x.empty() || us.quad_x.size() != us.quad_w.size())
        throw DomainError("quadrature nodes and weights must match and be nonempty");
    double prev = 0.0;
    for (double lam : us.eigenvalues) {
        if (!(lam > 0.0) || !std::isfinite(lam))
            throw DomainError("eigenvalues must be positive and finite");
        if (lam < prev) throw DomainError("eigenvalues must be nondecreasing");
        prev = lam;
    }
    SpectralDomain d;
    d.kind = DomainKind::UserSupplied;
    d.dim = us.dim;
    d.n_modes = n;
    d.eigenvalues = std::move(us.eigenvalues);
    d.mode_index.resize(n);
    for (int k = 1; k <= n; ++k) d.mode_index[k - 1] = {k, 0};
    d.quad_x = std::move(us.quad_x);
    d.quad_w = std::move(us.quad_w);
    d.efunc = std::move(us.eigenfunction);
    const double defect = gram_defect(d);
    if (!(defect <= 1e-10)) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "basis fails the Gram identity check: defect %.3e", defect);
        throw NotOrthonormal(msg);
    }
    return d;
}

// Bundles coefficients with their domain; rejects non-finite entries and
// more coefficients than the domain has modes.
inline ModeExpansion make_expansion(const SpectralDomain& d,
                                    std::vector<double> coeffs) {
    if (static_cast<int>(coeffs.size()) > d.n_modes)
        throw ValidationError("more coefficients than domain modes");
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw ValidationError("mode coefficients must be finite");
    return ModeExpansion{&d, std::move(coeffs)};
}

inline ModeExpansion unit_mode(const SpectralDomain& d, int k) {
    if (k < 1 || k > d.n_modes) throw OutOfRange("mode index out of range");
    std::vector<double> c(static_cast<std::size_t>(d.n_modes), 0.0);
    c[k - 1] = 1.0;
    return ModeExpansion{&d, std::move(c)};
}

// w_k = (func, phi_k)_{L2} under the stored quadrature.  func may take
// (double), (double, double), or (const Point&).
template <class F>
ModeExpansion project(const SpectralDomain& d, F&& func) {
    constexpr bool takes1 = std::is_invocable_r_v<double, std::decay_t<F>&, double>;
    constexpr bool takes2 =
        std::is_invocable_r_v<double, std::decay_t<F>&, double, double>;
    constexpr bool takes_p =
        std::is_invocable_r_v<double, std::decay_t<F>&, const Point&>;
    static_assert(takes1 || takes2 || takes_p,
                  "projected function must accept a spatial point");
    if constexpr (!takes_p) {
        if (d.dim == 1 && !takes1)
            throw DomainError("1-d domain needs a single-argument function");
        if (d.dim == 2 && !takes2)
            throw DomainError("2-d domain needs a two-argument function");
    }
    if (d.quad_nx > 0 && d.quad_nx < 10 * d.kmax_x)
        throw QuadratureUnderResolved("quadrature under-resolves the mode set");
    if (d.dim == 2 && d.quad_ny > 0 && d.quad_ny < 10 * d.kmax_y)
        throw QuadratureUnderResolved("quadrature under-resolves the mode set");
    auto eval = [&](const Point& p) -> double {
        if constexpr (takes_p)
            return func(p);
        else if constexpr (takes1 && takes2) {
            if (d.dim == 2) return func(p[0], p[1]);
            return func(p[0]);
        } else if constexpr (takes2)
            return func(p[0], p[1]);
        else
            return func(p[0]);
    };
    const std::size_t nq = d.quad_x.size();
    std::vector<double> fw(nq);
    for (std::size_t q = 0; q < nq; ++q) fw[q] = d.quad_w[q] * eval(d.quad_x[q]);
    ModeExpansion out{&d, std::vector<double>(static_cast<std::size_t>(d.n_modes))};
    std::vector<double> t(nq);
    for (int k = 1; k <= d.n_modes; ++k) {
        for (std::size_t q = 0; q < nq; ++q) t[q] = fw[q] * d.efunc(k, d.quad_x[q]);
        out.coeffs[k - 1] = pairwise_sum(t);
    }
    return out;
}

// (sum_k lambda_k^r w_k^2)^{1/2} over the stored modes; r may be negative.
inline double hs_norm(const ModeExpansion& w, double r) {
    if (!w.domain) throw ValidationError("expansion is not bound to a domain");
    const std::size_t n = w.coeffs.size();
    if (n > w.domain->eigenvalues.size())
        throw ValidationError("more coefficients than domain modes");
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = std::pow(w.domain->eigenvalues[i], r) * w.coeffs[i] * w.coeffs[i];
    return std::sqrt(pairwise_sum(t));
}

// Diagonal action of the fractional operator: coefficients lambda_k^s w_k.
inline ModeExpansion apply_fractional(const SpectralDomain& d,
                                      const ModeExpansion& w, double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (w.coeffs.size() > d.eigenvalues.size())
        throw ValidationError("more coefficients than domain modes");
    ModeExpansion out{&d, w.coeffs};
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] *= std::pow(d.eigenvalues[i], s);
    return out;
}

// Pointwise reconstruction sum_k w_k phi_k.
inline double evaluate(const ModeExpansion& w, const Point& p) {
    if (!w.domain) throw ValidationError("expansion is not bound to a domain");
    std::vector<double> t(w.coeffs.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = w.coeffs[i] * w.domain->efunc(static_cast<int>(i) + 1, p);
    return pairwise_sum(t);
}

inline double evaluate(const ModeExpansion& w, double x) {
    return evaluate(w, Point{x, 0.0});
}

inline double evaluate(const ModeExpansion& w, double x, double y) {
    return evaluate(w, Point{x, y});
}

inline void write_csv(const ModeExpansion& w, std::ostream& out) {
    if (!w.domain) throw ValidationError("expansion is not bound to a domain");
    out << "k,lambda_k,w_k\n";
    char line[96];
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i + 1,
                      w.domain->eigenvalues[i], w.coeffs[i]);
        out << line;
    }
}

inline std::string to_csv(const ModeExpansion& w) {
    std::ostringstream os;
    write_csv(w, os);
    return os.str();
}

}  // namespace fracwave
