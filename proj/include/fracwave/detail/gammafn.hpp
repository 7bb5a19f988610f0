#pragma once

#include <cmath>

// Reciprocal gamma helpers.  1/Gamma is entire, so these return exact zeros
// at the poles of Gamma (non-positive integers) and stay smooth nearby.
// The reflection route keeps them thread safe (no signgam global).

namespace fracwave::detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// sin(pi x) computed with the argument reduced by whole periods, so the
// zeros at integers are exact even for large |x|.
inline double sinpi(double x) {
    double r = x - 2.0 * std::floor(0.5 * x);  // r in [0, 2)
    if (r == 0.0 || r == 1.0) return 0.0;      // sin(pi r) would miss by ~1e-16
    return std::sin(3.141592653589793238462643383279502884 * (r < 1.0 ? r : r - 2.0));
}

inline long double sinpil(long double x) {
    long double r = x - 2.0L * std::floor(0.5L * x);
    if (r == 0.0L || r == 1.0L) return 0.0L;
    return std::sin(3.141592653589793238462643383279502884L * (r < 1.0L ? r : r - 2.0L));
}

// 1/Gamma(x) for all real x.
inline double rgamma(double x) {
    if (x > 0.0) {
        if (x > 171.0) return 0.0;  // Gamma overflows, reciprocal underflows
        return std::exp(-std::lgamma(x));
    }
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    double s = sinpi(x);
    if (s == 0.0) return 0.0;
    return std::exp(std::lgamma(1.0 - x)) * s
        / 3.141592653589793238462643383279502884;
}

inline long double rgammal(long double x) {
    if (x > 0.0L) {
        if (x > 1755.0L) return 0.0L;
        return std::exp(-std::lgamma(x));
    }
    long double s = sinpil(x);
    if (s == 0.0L) return 0.0L;
    return std::exp(std::lgamma(1.0L - x)) * s
        / 3.141592653589793238462643383279502884L;
}

// log|Gamma(x)| and the sign of Gamma(x), valid away from the poles.
inline double lgamma_signed(double x, int& sign) {
    if (x > 0.0) {
        sign = 1;
        return std::lgamma(x);
    }
    double s = sinpi(x);
    sign = (s > 0.0) ? 1 : (s < 0.0 ? -1 : 0);
    if (sign == 0) return HUGE_VAL;  // pole
    return std::log(3.141592653589793238462643383279502884 / std::fabs(s))
        - std::lgamma(1.0 - x);
}

}  // namespace fracwave::detail
