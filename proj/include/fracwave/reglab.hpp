#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/extension.hpp"
#include "fracwave/mlfunc.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/spectral.hpp"
#include "fracwave/wavesolve.hpp"

namespace fracwave {

// Power-law fit of a time-derivative norm as t drops to zero.
struct BlowupFit {
    double exponent_hat = 0.0;
    double r2 = 0.0;
    std::pair<double, double> t_range{0.0, 0.0};
};

// Norms of the problem data entering the a-priori estimates.  The g-data
// is measured in both candidate spaces since the sharp one is unsettled.
struct DataNormBundle {
    double g_norm_s = 0.0;       // H^s
    double g_norm_2s = 0.0;      // H^{2s}
    double h_norm_0 = 0.0;       // L^2
    double f_norm_H2dual = 0.0;  // H^2(0, T; H^{-s})
};

// Grid suprema of the propagator ratios; both stay bounded because
// |E_{gamma,mu}(-x)| decays like 1/x while the numerators carry at most
// half a power of x per mode.
struct OperatorBoundRecord {
    double g_ratio_sup = 0.0;
    double h_ratio_sup = 0.0;
    double g_argmax_t = 0.0;
    double h_argmax_t = 0.0;
};

// Weighted time integral with its endpoint diagnosis.  Divergence is a
// reported outcome: value holds the +infinity sentinel and channel names
// the data entry whose t -> 0 power breaks integrability.
struct TimeNormReport {
    double value = 0.0;
    double endpoint_exponent = std::numeric_limits<double>::infinity();
    bool divergent = false;
    std::string channel = "none";
    double amplitude = 0.0;  // squared data functional ||g||_s + ||h|| + ||f||
    double constant = 0.0;   // value / amplitude
};

// One factorial-growth normalization: norms[l] against
// kappa^{2(l+1)} ((l+1)!)^2 data_bound for l = 0..ell_max.
struct GrowthFit {
    double kappa_hat = 1.0;
    double raw_fit = 0.0;
    bool fit_attained = false;
    double data_bound = 0.0;
    std::vector<double> norms;
    std::vector<double> ratios;
};

struct SpaceRegularityReport {
    double kappa_hat_1 = 1.0;  // height ladder
    double kappa_hat_2 = 1.0;  // tangential gradient of the ladder
    double kappa_hat_3 = 1.0;  // spatial operator applied to the ladder
    GrowthFit dy;
    GrowthFit grad;
    GrowthFit lap;
    double log_constant = 0.0;  // sup_z log(1+z) z^{-mu}
    double mu = 0.0;
};

struct SpaceTimeReport {
    double kappa_hat_1 = 1.0;
    double kappa_hat_2 = 1.0;
    double kappa_hat_3 = 1.0;
    GrowthFit dy;
    GrowthFit grad;
    GrowthFit lap;
    double endpoint_exponent = std::numeric_limits<double>::infinity();
    bool divergent = false;
};

namespace detail {

inline AdaptOpts reg_conv_opts() { return AdaptOpts{1e-11, 1e-13, 16, 14}; }
inline AdaptOpts reg_time_opts() { return AdaptOpts{1e-10, 1e-14, 16, 12}; }

// An absent datum carries zero norm; a populated expansion goes through
// the full domain validation.
inline double data_norm(const ModeExpansion& w, double r) {
    return w.coeffs.empty() ? 0.0 : hs_norm(w, r);
}

inline ScalarMode mode_data(const FracWaveProblem& p, int k) {
    ScalarMode m;
    m.gamma = p.gamma;
    m.lams = std::pow(p.domain->eigenvalues[k - 1], p.s);
    m.g = (k <= static_cast<int>(p.g.coeffs.size())) ? p.g.coeffs[k - 1] : 0.0;
    m.h = (k <= static_cast<int>(p.h.coeffs.size())) ? p.h.coeffs[k - 1] : 0.0;
    if (k <= static_cast<int>(p.f_modes.size())) m.force = p.f_modes[k - 1];
    return m;
}

inline void require_force_derivatives(const ScalarMode& m, int q) {
    if (!m.force.f) return;
    if (q >= 2 && !m.force.df)
        throw ValidationError("forcing lacks the first time derivative");
    if (q >= 3 && !m.force.d2f)
        throw ValidationError("forcing lacks the second time derivative");
}

// j-th derivative of the propagator kernel s^{gamma-1} E_{gamma,gamma}
// (-lams s^gamma); each derivative lowers both indices by one.
inline double kernel_deriv(double gamma, double lams, int j, double s) {
    return std::pow(s, gamma - 1.0 - j)
        * ml(gamma, gamma - j, -lams * std::pow(s, gamma));
}

// q-th time derivative of one mode trajectory at t > 0, from the closed
// mode formulas; the forcing tail is pushed onto f', f'' by parts so only
// the stored derivatives are ever sampled.
inline double mode_deriv(const ScalarMode& m, int q, double t,
                         const AdaptOpts& o) {
    if (q < 1 || q > 3)
        throw ValidationError("derivative order must be 1, 2, or 3");
    if (!(t > 0.0)) throw DomainError("derivative time must be positive");
    require_force_derivatives(m, q);
    const double gamma = m.gamma;
    double acc = 0.0;
    if (gamma == 2.0) {
        const double w = std::sqrt(m.lams);
        const double c = std::cos(w * t), sn = std::sin(w * t);
        switch (q) {
            case 1:
                acc = -m.g * w * sn + m.h * c;
                break;
            case 2:
                acc = -m.g * w * w * c - m.h * w * sn;
                break;
            default:
                acc = m.g * w * w * w * sn - m.h * w * w * c;
                break;
        }
        if (m.force.f) {
            const auto& fo = m.force;
            switch (q) {
                case 1:
                    acc += integrate_adaptive(
                        [&](double r) { return std::cos(w * (t - r)) * fo.f(r); },
                        0.0, t, o);
                    break;
                case 2:
                    acc += std::cos(w * t) * fo.f(0.0)
                        + integrate_adaptive(
                              [&](double r) {
                                  return std::cos(w * r) * fo.df(t - r);
                              },
                              0.0, t, o);
                    break;
                default:
                    acc += -w * std::sin(w * t) * fo.f(0.0)
                        + std::cos(w * t) * fo.df(0.0)
                        + integrate_adaptive(
                              [&](double r) {
                                  return std::cos(w * r) * fo.d2f(t - r);
                              },
                              0.0, t, o);
                    break;
            }
        }
        return acc;
    }
    const double z = -m.lams * std::pow(t, gamma);
    if (m.g != 0.0)
        acc = -m.lams * std::pow(t, gamma - q) * ml(gamma, gamma - q + 1.0, z)
            * m.g;
    if (m.h != 0.0) {
        if (q == 1)
            acc += ml(gamma, 1.0, z) * m.h;
        else
            acc += -m.lams * std::pow(t, gamma - q + 1.0)
                * ml(gamma, gamma - q + 2.0, z) * m.h;
    }
    if (m.force.f) {
        const auto& fo = m.force;
        const double lams = m.lams;
        auto tail = [&](const std::function<double(double)>& dj) {
            return integrate_singular_left(
                [&, gamma, lams, t](double r) {
                    return ml(gamma, gamma - 1.0, -lams * std::pow(r, gamma))
                        * dj(t - r);
                },
                gamma - 2.0, t, o);
        };
        switch (q) {
            case 1:
                acc += tail(fo.f);
                break;
            case 2:
                acc += kernel_deriv(gamma, lams, 1, t) * fo.f(0.0) + tail(fo.df);
                break;
            default:
                acc += kernel_deriv(gamma, lams, 2, t) * fo.f(0.0)
                    + kernel_deriv(gamma, lams, 1, t) * fo.df(0.0)
                    + tail(fo.d2f);
                break;
        }
    }
    return acc;
}

inline double deriv_norm_sq(const FracWaveProblem& p, int q, double r,
                            double t, const AdaptOpts& o) {
    const int n = p.domain->n_modes;
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double d = mode_deriv(mode_data(p, k), q, t, o);
        terms[k - 1] = std::pow(p.domain->eigenvalues[k - 1], r) * d * d;
    }
    return pairwise_sum(terms);
}

struct ChannelDiag {
    double exponent = std::numeric_limits<double>::infinity();
    std::string channel = "none";
};

// t -> 0 power of t^rho (d^q u)^2 per data channel; the active minimum
// decides integrability.  At gamma = 2 the leading terms are trigonometric
// and the powers flip with the parity of q.
inline ChannelDiag endpoint_channels(const FracWaveProblem& p, double rho,
                                     int q) {
    bool has_g = false, has_h = false, has_f = false;
    bool has_f0 = false, has_f1 = false;
    for (double c : p.g.coeffs) has_g = has_g || c != 0.0;
    for (double c : p.h.coeffs) has_h = has_h || c != 0.0;
    for (const ModeForcing& fo : p.f_modes) {
        if (!fo.f) continue;
        has_f = true;
        has_f0 = has_f0 || fo.f(0.0) != 0.0;
        if (q >= 2 && fo.df) has_f1 = has_f1 || fo.df(0.0) != 0.0;
    }
    const double gamma = p.gamma;
    ChannelDiag d;
    auto offer = [&](bool active, double e, const char* name) {
        if (active && e < d.exponent) {
            d.exponent = e;
            d.channel = name;
        }
    };
    if (gamma == 2.0) {
        const bool odd = q % 2 == 1;
        offer(has_g, odd ? rho + 2.0 : rho, "g");
        offer(has_h, odd ? rho : rho + 2.0, "h");
        offer(has_f0, q == 2 ? rho : rho + 2.0, "f");
        offer(has_f1, q == 3 ? rho : rho + 2.0, "f");
        offer(has_f, rho + 2.0, "f");
        return d;
    }
    offer(has_g, rho + 2.0 * (gamma - q), "g");
    offer(has_h, q == 1 ? rho : rho + 2.0 * (gamma - q + 1.0), "h");
    offer(has_f0, rho + 2.0 * (gamma - q), "f");
    offer(has_f1, rho + 2.0 * (gamma - q + 1.0), "f");
    offer(has_f, rho + 2.0 * (gamma - 1.0), "f");
    return d;
}

// Integral over (0, T) on the graded map t = T u^p; p is chosen from the
// endpoint power e so the substituted integrand vanishes like u^2.
template <class F>
double graded_time_integral(F&& integrand, double T, double e,
                            const AdaptOpts& o) {
    const double denom = e + 1.0;
    const double p = denom > 0.0 && std::isfinite(denom)
        ? std::max(2.0, 3.0 / denom)
        : 2.0;
    auto in_u = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double t = T * std::pow(u, p);
        return integrand(t) * T * p * std::pow(u, p - 1.0);
    };
    return integrate_adaptive(in_u, 0.0, 1.0, o);
}

// sup_z log(1+z) z^{-mu} via the stationarity relation mu w = 1 - e^{-w}
// for w = log(1+z).
inline double log_envelope_constant(double mu) {
    double w = 1.0 / mu;
    for (int i = 0; i < 64; ++i) w = (1.0 - std::exp(-w)) / mu;
    return w * std::pow(std::expm1(w), -mu);
}

inline GrowthFit growth_fit(std::vector<double> norms, double bound) {
    GrowthFit g;
    g.norms = std::move(norms);
    g.data_bound = bound;
    g.ratios.assign(g.norms.size(), 0.0);
    if (bound > 0.0) {
        double fact = 1.0;
        for (std::size_t i = 0; i < g.norms.size(); ++i) {
            fact *= static_cast<double>(i + 1);
            g.raw_fit = std::max(
                g.raw_fit,
                std::pow(g.norms[i] / (fact * fact * bound),
                         0.5 / static_cast<double>(i + 1)));
        }
    }
    g.fit_attained = g.raw_fit > 1.0 + 1e-9;
    g.kappa_hat = std::max(g.raw_fit, 1.0 + 1e-9);
    if (bound > 0.0) {
        double fact = 1.0;
        for (std::size_t i = 0; i < g.norms.size(); ++i) {
            fact *= static_cast<double>(i + 1);
            g.ratios[i] = g.norms[i]
                / (std::pow(g.kappa_hat, 2.0 * static_cast<double>(i + 1))
                   * fact * fact * bound);
        }
    }
    return g;
}

// Integral over (a, b) of sum_k lambda_k^r (d^j f_k)^2; j picks f, f', f''.
inline double forcing_sq_norm(const FracWaveProblem& p, double r, int j,
                              double a, double b) {
    if (p.f_modes.empty()) return 0.0;
    const AdaptOpts o = reg_time_opts();
    auto density = [&](double t) {
        std::vector<double> terms(p.f_modes.size(), 0.0);
        for (std::size_t k = 0; k < p.f_modes.size(); ++k) {
            const ModeForcing& fo = p.f_modes[k];
            if (!fo.f) continue;
            const double v = j == 0 ? fo.f(t) : (j == 1 ? fo.df(t) : fo.d2f(t));
            terms[k] = std::pow(p.domain->eigenvalues[k], r) * v * v;
        }
        return pairwise_sum(terms);
    };
    return integrate_adaptive(density, a, b, o);
}

}  // namespace detail

inline DataNormBundle compute_data_norms(const FracWaveProblem& p) {
    for (const ModeForcing& fo : p.f_modes)
        if (fo.f && (!fo.df || !fo.d2f))
            throw ValidationError(
                "forcing needs two time derivatives for the data norms");
    DataNormBundle b;
    b.g_norm_s = detail::data_norm(p.g, p.s);
    b.g_norm_2s = detail::data_norm(p.g, 2.0 * p.s);
    b.h_norm_0 = detail::data_norm(p.h, 0.0);
    const double f2 = detail::forcing_sq_norm(p, -p.s, 0, 0.0, p.T)
        + detail::forcing_sq_norm(p, -p.s, 1, 0.0, p.T)
        + detail::forcing_sq_norm(p, -p.s, 2, 0.0, p.T);
    b.f_norm_H2dual = std::sqrt(f2);
    return b;
}

// Grid suprema of ||d^q G w||_{H^r} / (t^{gamma-q} ||w||_{H^{r+2s}}) and
// ||d^{q+1} H w||_{H^r} / (t^{gamma/2-q} ||w||_{H^{r+s}}).  The same mode
// sum serves both: the extra derivative on the second propagator cancels
// its extra power of t, leaving t^{gamma/2} against the weaker norm.
inline OperatorBoundRecord solution_operator_bound_check(
    double s, double gamma, double r, int q, std::span<const double> t_grid,
    const ModeExpansion& w) {
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError("fractional power must lie in (0, 1)");
    if (!(gamma > 1.0) || !(gamma < 2.0))
        throw InvalidOrder("time order must lie in (1, 2)");
    if (q < 1 || q > 3)
        throw ValidationError("derivative order must be 1, 2, or 3");
    if (!(r >= -s) || !(r <= s))
        throw OutOfRange("norm index must lie in [-s, s]");
    if (!w.domain) throw ValidationError("expansion is not bound to a domain");
    const std::size_t n = w.coeffs.size();
    std::vector<double> strong(n), weak(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = w.domain->eigenvalues[i];
        const double c2 = w.coeffs[i] * w.coeffs[i];
        strong[i] = std::pow(lam, r + 2.0 * s) * c2;
        weak[i] = std::pow(lam, r + s) * c2;
    }
    const double denom_g = std::sqrt(pairwise_sum(strong));
    const double denom_h = std::sqrt(pairwise_sum(weak));
    OperatorBoundRecord rec;
    if (denom_g == 0.0) return rec;
    std::vector<double> terms(n);
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw DomainError("grid times must be non-negative");
        for (std::size_t i = 0; i < n; ++i) {
            const double lams = std::pow(w.domain->eigenvalues[i], s);
            const double e = ml(gamma, gamma - q + 1.0,
                                -lams * std::pow(t, gamma));
            terms[i] = strong[i] * e * e;
        }
        const double num = std::sqrt(pairwise_sum(terms));
        const double gr = num / denom_g;
        const double hr = std::pow(t, 0.5 * gamma) * num / denom_h;
        if (gr > rec.g_ratio_sup) {
            rec.g_ratio_sup = gr;
            rec.g_argmax_t = t;
        }
        if (hr > rec.h_ratio_sup) {
            rec.h_ratio_sup = hr;
            rec.h_argmax_t = t;
        }
    }
    return rec;
}

// Least-squares slope of log ||d^q u||_{H^r} against log t on a fixed
// log-spaced window near zero.  The window sits where the mode formulas
// are asymptotic, so the slope exposes the leading singular power.
inline BlowupFit fit_blowup_exponent(const FracWaveProblem& p, int q,
                                     double r) {
    if (q != 2 && q != 3)
        throw ValidationError("blow-up fit takes derivative order 2 or 3");
    constexpr int npts = 25;
    const double t0 = 1e-6, t1 = 1e-2;
    const AdaptOpts o = detail::reg_conv_opts();
    std::vector<double> lt(npts), ln(npts);
    for (int i = 0; i < npts; ++i) {
        const double t = t0 * std::pow(t1 / t0, double(i) / (npts - 1));
        const double nsq = detail::deriv_norm_sq(p, q, r, t, o);
        if (!(nsq > 0.0))
            throw DegenerateFit("derivative norm vanishes on the fit window");
        lt[i] = std::log(t);
        ln[i] = 0.5 * std::log(nsq);
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < npts; ++i) {
        mx += lt[i];
        my += ln[i];
    }
    mx /= npts;
    my /= npts;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < npts; ++i) {
        sxx += (lt[i] - mx) * (lt[i] - mx);
        sxy += (lt[i] - mx) * (ln[i] - my);
        syy += (ln[i] - my) * (ln[i] - my);
    }
    BlowupFit fit;
    fit.exponent_hat = sxy / sxx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
    fit.t_range = {t0, t1};
    if (!(fit.r2 >= 0.99))
        throw DegenerateFit("blow-up fit fails the goodness threshold");
    return fit;
}

// int_0^T t^rho ||d^q u||^2_{H^{-s}} dt on the graded map, or the
// divergence sentinel when the endpoint power reaches -1.
inline TimeNormReport weighted_time_norm(const FracWaveProblem& p, double rho,
                                         int q = 3) {
    if (q < 1 || q > 3)
        throw ValidationError("derivative order must be 1, 2, or 3");
    for (int k = 1; k <= p.domain->n_modes; ++k)
        detail::require_force_derivatives(detail::mode_data(p, k), q);
    TimeNormReport rep;
    const DataNormBundle b = compute_data_norms(p);
    const double amp = b.g_norm_s + b.h_norm_0 + b.f_norm_H2dual;
    rep.amplitude = amp * amp;
    const detail::ChannelDiag diag = detail::endpoint_channels(p, rho, q);
    rep.endpoint_exponent = diag.exponent;
    rep.channel = diag.channel;
    if (diag.channel == "none") return rep;
    if (diag.exponent <= -1.0) {
        rep.divergent = true;
        rep.value = std::numeric_limits<double>::infinity();
        rep.constant = std::numeric_limits<double>::infinity();
        return rep;
    }
    const AdaptOpts conv = detail::reg_conv_opts();
    auto integrand = [&](double t) {
        return std::pow(t, rho) * detail::deriv_norm_sq(p, q, -p.s, t, conv);
    };
    rep.value = detail::graded_time_integral(integrand, p.T, diag.exponent,
                                             detail::reg_time_opts());
    rep.constant = rep.amplitude > 0.0 ? rep.value / rep.amplitude : 0.0;
    return rep;
}

namespace detail {

struct FamilyWeights {
    double beta;   // shape weight exponent fed to the profile integrals
    double shift;  // eigenvalue power per mode
};

// Mode factor and shape weight of the three derivative families: the
// height ladder at weight alpha + 2 ell - 2 sigma, and the tangential
// gradient / operator ladders at weight alpha + 2 (ell+1) - 2 nu.
inline std::array<FamilyWeights, 3> family_weights(double s, double sigma,
                                                   double nu) {
    const double alpha = 1.0 - 2.0 * s;
    return {FamilyWeights{alpha - 2.0 * sigma - 2.0, s + sigma},
            FamilyWeights{alpha - 2.0 * nu, s + nu},
            FamilyWeights{alpha - 2.0 * nu, 1.0 + s + nu}};
}

inline void check_fit_range(const FracWaveProblem& p, double sigma, double nu,
                            int ell_max) {
    if (!(sigma >= 0.0) || !(sigma < p.s))
        throw OutOfRange("weight shift sigma must lie in [0, s)");
    if (!(nu >= 0.0) || !(nu < 1.0 + p.s))
        throw OutOfRange("weight shift nu must lie in [0, 1 + s)");
    if (ell_max < 0 || ell_max > 4)
        throw ValidationError("ladder depth must lie in [0, 4]");
}

inline std::vector<double> family_norms(const ExtensionField& f,
                                        const FamilyWeights& fw, int ell_max,
                                        std::span<const double> mode_mass) {
    const FracWaveProblem& p = *f.problem;
    const double lam1 = p.domain->eigenvalues.front();
    std::vector<double> out(static_cast<std::size_t>(ell_max) + 1);
    for (int ell = 0; ell <= ell_max; ++ell) {
        std::vector<double> terms(mode_mass.size(), 0.0);
        for (std::size_t k = 0; k < mode_mass.size(); ++k) {
            if (mode_mass[k] == 0.0) continue;
            const double lam = p.domain->eigenvalues[k];
            terms[k] = std::pow(lam, fw.shift)
                * psi_integral(p.s, ell + 1, fw.beta, f.weight.theta, lam,
                               lam1)
                * mode_mass[k];
        }
        out[ell] = pairwise_sum(terms);
    }
    return out;
}

}  // namespace detail

// Factorial-growth fit of the three weighted derivative ladders over
// ell = 0..ell_max, with each mode's time mass taken on t_window and the
// data bounds assembled with their horizon powers; the logarithm from the
// forcing estimate is majorized by z^mu with the recorded constant.
inline SpaceRegularityReport space_regularity_fit(
    const ExtensionField& f, double sigma, double nu, int ell_max,
    std::pair<double, double> t_window, double mu = 0.05) {
    const FracWaveProblem& p = *f.problem;
    detail::check_fit_range(p, sigma, nu, ell_max);
    if (!(mu > 0.0) || !(mu < 0.5))
        throw DomainError("log exponent mu must lie in (0, 1/2)");
    const auto [a, bnd] = t_window;
    if (!(a >= 0.0) || !(a < bnd) || !(bnd <= p.T))
        throw ValidationError("time window must satisfy 0 <= a < b <= T");
    const int n = p.domain->n_modes;
    std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
    const AdaptOpts o = detail::reg_time_opts();
    for (int k = 1; k <= n; ++k) {
        const ModeTrajectory traj = solve_mode(p, k);
        mass[k - 1] = integrate_adaptive(
            [&](double t) {
                const double u = traj.u(t);
                return u * u;
            },
            a, bnd, o);
    }
    const auto fams = detail::family_weights(p.s, sigma, nu);
    SpaceRegularityReport rep;
    rep.mu = mu;
    rep.log_constant = detail::log_envelope_constant(mu);
    const double T = p.T;
    const double cmu2 = rep.log_constant * rep.log_constant;
    auto data_bound = [&](double shift) {
        const double gsq = detail::data_norm(p.g, shift + p.s);
        const double hsq = detail::data_norm(p.h, shift);
        if (p.gamma == 2.0)
            return T * gsq * gsq + T * hsq * hsq
                + T * T * detail::forcing_sq_norm(p, shift, 0, 0.0, T);
        const double fshift = shift - p.s + 2.0 * mu * p.s;
        return T * gsq * gsq + std::pow(T, 3.0 - p.gamma) * hsq * hsq
            + cmu2 * std::pow(T, 2.0 * mu * p.gamma)
            * detail::forcing_sq_norm(p, fshift, 0, 0.0, T);
    };
    rep.dy = detail::growth_fit(
        detail::family_norms(f, fams[0], ell_max, mass), data_bound(sigma));
    rep.grad = detail::growth_fit(
        detail::family_norms(f, fams[1], ell_max, mass), data_bound(nu));
    rep.lap = detail::growth_fit(
        detail::family_norms(f, fams[2], ell_max, mass),
        data_bound(1.0 + nu));
    rep.kappa_hat_1 = rep.dy.kappa_hat;
    rep.kappa_hat_2 = rep.grad.kappa_hat;
    rep.kappa_hat_3 = rep.lap.kappa_hat;
    return rep;
}

// Same ladders with each mode's time mass replaced by the rho-weighted
// integral of its third derivative; the divergence sentinel propagates
// whenever the endpoint power breaks integrability.
inline SpaceTimeReport space_time_regularity_check(const ExtensionField& f,
                                                   double sigma, double nu,
                                                   double rho, int ell_max) {
    const FracWaveProblem& p = *f.problem;
    detail::check_fit_range(p, sigma, nu, ell_max);
    for (int k = 1; k <= p.domain->n_modes; ++k)
        detail::require_force_derivatives(detail::mode_data(p, k), 3);
    SpaceTimeReport rep;
    const detail::ChannelDiag diag = detail::endpoint_channels(p, rho, 3);
    rep.endpoint_exponent = diag.exponent;
    const int n = p.domain->n_modes;
    auto data_bound = [&](double shift) {
        const double gsq = detail::data_norm(p.g, shift + 3.0 * p.s);
        const double hsq = detail::data_norm(p.h, shift + 2.0 * p.s);
        const double fsq = detail::forcing_sq_norm(p, shift + p.s, 0, 0.0, p.T)
            + detail::forcing_sq_norm(p, shift + p.s, 1, 0.0, p.T)
            + detail::forcing_sq_norm(p, shift + p.s, 2, 0.0, p.T);
        return gsq * gsq + hsq * hsq + fsq;
    };
    const auto fams = detail::family_weights(p.s, sigma, nu);
    if (diag.channel != "none" && diag.exponent <= -1.0) {
        rep.divergent = true;
        const double inf = std::numeric_limits<double>::infinity();
        auto poisoned = [&](double shift) {
            GrowthFit g;
            g.data_bound = data_bound(shift);
            g.norms.assign(static_cast<std::size_t>(ell_max) + 1, inf);
            g.ratios.assign(static_cast<std::size_t>(ell_max) + 1, inf);
            g.raw_fit = inf;
            g.kappa_hat = inf;
            return g;
        };
        rep.dy = poisoned(sigma);
        rep.grad = poisoned(nu);
        rep.lap = poisoned(1.0 + nu);
        rep.kappa_hat_1 = rep.kappa_hat_2 = rep.kappa_hat_3 = inf;
        return rep;
    }
    std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
    const AdaptOpts conv = detail::reg_conv_opts();
    for (int k = 1; k <= n; ++k) {
        const detail::ScalarMode m = detail::mode_data(p, k);
        if (m.g == 0.0 && m.h == 0.0 && !m.force.f) continue;
        mass[k - 1] = detail::graded_time_integral(
            [&](double t) {
                const double d = detail::mode_deriv(m, 3, t, conv);
                return std::pow(t, rho) * d * d;
            },
            p.T, diag.exponent, detail::reg_time_opts());
    }
    rep.dy = detail::growth_fit(
        detail::family_norms(f, fams[0], ell_max, mass), data_bound(sigma));
    rep.grad = detail::growth_fit(
        detail::family_norms(f, fams[1], ell_max, mass), data_bound(nu));
    rep.lap = detail::growth_fit(
        detail::family_norms(f, fams[2], ell_max, mass),
        data_bound(1.0 + nu));
    rep.kappa_hat_1 = rep.dy.kappa_hat;
    rep.kappa_hat_2 = rep.grad.kappa_hat;
    rep.kappa_hat_3 = rep.lap.kappa_hat;
    return rep;
}

}  // namespace fracwave
