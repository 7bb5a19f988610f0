#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "fracwave/detail/gammafn.hpp"
#include "fracwave/errors.hpp"

namespace fracwave {

// Modified Bessel function of the second kind K_nu(z), z > 0, real order.
// Even in nu.  Small z uses the Temme series, large z the Steed continued
// fraction, both producing the scaled pair e^z (K_q, K_{q+1}) for a
// fractional seed order |q| <= 1/2; integer offsets climb the three-term
// recurrence, which is forward stable for K.

struct BesselKReport {
    double value = 0.0;
    bool underflowed = false;  // e^-z range exhausted; value reported as 0
};

namespace detail {

inline constexpr double kBesselEps = 1e-17;

// Scaled seed pair e^z (K_q(z), K_{q+1}(z)) for |q| <= 1/2, z <= 3.
inline void temme_kpair_scaled(double q, double z, double& k0, double& k1) {
    const double half = 0.5 * z;
    const double pimu = kPi * q;
    const double fact =
        (std::fabs(pimu) < 1e-30) ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(half);
    const double e = q * d;
    const double fact2 = (std::fabs(e) < 1e-30) ? 1.0 : std::sinh(e) / e;
    const double gampl = rgamma(1.0 + q);
    const double gammi = rgamma(1.0 - q);
    // gam1 has a removable singularity at q = 0 with limit -psi(1)
    const double gam1 = (std::fabs(q) < 1e-7)
        ? 0.57721566490153286061 + 0.1585417477 * q * q
        : (gammi - gampl) / (2.0 * q);
    const double gam2 = 0.5 * (gammi + gampl);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double qq = 0.5 / (ee * gammi);
    double c = 1.0;
    const double d2 = half * half;
    double sum1 = p;
    for (int i = 1; i <= 400; ++i) {
        ff = (i * ff + p + qq) / (i * i - q * q);
        c *= d2 / i;
        p /= (i - q);
        qq /= (i + q);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::fabs(del) < std::fabs(sum) * kBesselEps) {
            const double ez = std::exp(z);
            k0 = sum * ez;
            k1 = sum1 * (2.0 / z) * ez;
            return;
        }
    }
    throw NonConvergent("temme series for K did not reach tolerance");
}

// Scaled seed pair by Steed's CF2, z >= 1.5.
inline void cf2_kpair_scaled(double q, double z, double& k0, double& k1) {
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - q * q;
    double qv = a1, c = a1, a = -a1;
    double s = 1.0 + qv * delh;
    for (int i = 2; i <= 800; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        qv += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = qv * delh;
        s += dels;
        if (std::fabs(dels / s) < kBesselEps) {
            h = a1 * h;
            k0 = std::sqrt(kPi / (2.0 * z)) / s;
            k1 = k0 * (q + z + 0.5 - h) / z;
            return;
        }
    }
    throw NonConvergent("continued fraction for K did not reach tolerance");
}

// e^z K_nu(z) for any real nu via seed pair plus upward recurrence.
inline double bessel_k_scaled_impl(double nu, double z) {
    nu = std::fabs(nu);
    const int m = (int)std::floor(nu + 0.5);
    const double q = nu - m;  // in [-1/2, 1/2)
    double k0, k1;
    if (z <= 2.0)
        temme_kpair_scaled(q, z, k0, k1);
    else
        cf2_kpair_scaled(q, z, k0, k1);
    for (int i = 0; i < m; ++i) {
        const double knext = k0 + (2.0 * (q + i) + 2.0) / z * k1;
        k0 = k1;
        k1 = knext;
    }
    return k0;
}

}  // namespace detail

inline double bessel_k_scaled(double nu, double z) {
    if (!(z > 0.0)) throw DomainError("bessel K requires z > 0");
    return detail::bessel_k_scaled_impl(nu, z);
}

inline BesselKReport bessel_k_report(double nu, double z) {
    if (!(z > 0.0)) throw DomainError("bessel K requires z > 0");
    const double scaled = detail::bessel_k_scaled_impl(nu, z);
    BesselKReport r;
    const double lv = std::log(scaled) - z;
    if (lv < -745.0) {
        r.value = 0.0;
        r.underflowed = true;
    } else {
        r.value = scaled * std::exp(-z);
        r.underflowed = (r.value == 0.0);
    }
    return r;
}

inline double bessel_k(double nu, double z) {
    return bessel_k_report(nu, z).value;
}

// e^z K_{m-s}(z) for m = 0..mmax, shared seed, one climb of the recurrence.
inline std::vector<double> bessel_k_ladder_scaled(double s, int mmax, double z) {
    if (!(z > 0.0)) throw DomainError("bessel K requires z > 0");
    if (!(s > 0.0) || !(s < 1.0)) throw OutOfRange("ladder order s must be in (0,1)");
    if (mmax < 0) throw OutOfRange("ladder length must be non-negative");
    // the ladder in nu = m - s starts at nu = -s (where K_{-s} = K_s) and
    // climbs by one; the seed order q in [-1/2, 1/2) is -s or s - 1, and
    // in the latter case the returned pair (K_{s-1}, K_s) is the first two
    // rungs in reversed order since K_{s-1} = K_{1-s}
    std::vector<double> out(mmax + 1);
    const double q = (s <= 0.5) ? -s : s - 1.0;
    double k0, k1;
    if (z <= 2.0)
        detail::temme_kpair_scaled(q, z, k0, k1);
    else
        detail::cf2_kpair_scaled(q, z, k0, k1);
    if (s > 0.5) std::swap(k0, k1);  // now (K_{-s}, K_{1-s}) scaled
    for (int m = 0; m <= mmax; ++m) {
        out[m] = k0;
        const double knext = k0 + (2.0 * (m - s) + 2.0) / z * k1;
        k0 = k1;
        k1 = knext;
    }
    return out;
}

// Unscaled ladder; underflows term by term once e^-z is exhausted.
inline std::vector<double> bessel_k_ladder(double s, int mmax, double z) {
    std::vector<double> out = bessel_k_ladder_scaled(s, mmax, z);
    const double ez = std::exp(-z);
    for (double& v : out) v *= ez;
    return out;
}

}  // namespace fracwave
