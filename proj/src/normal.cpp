#include "bht/normal.hpp"

#include <cmath>

#include "bht/errors.hpp"

namespace bht {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;  // ln sqrt(2 pi)
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kEightOverPi = 4.0 * kTwoOverPi;
}  // namespace

double phi(double t) { return 0.5 * std::erfc(-t / kSqrt2); }

double phi_c(double t) { return 0.5 * std::erfc(t / kSqrt2); }

double log_phi_c(double t) {
    // erfc keeps full accuracy until it underflows near t = 37; switch to
    // the tail series while the truncation error is still below 1e-13
    if (t <= 26.0) return std::log(phi_c(t));
    // ln Phi^C(t) = -t^2/2 - ln(t sqrt(2 pi)) + ln(1 - 1/t^2 + 3/t^4 - ...)
    double u = 1.0 / (t * t);
    double series =
        1.0 +
        u * (-1.0 + u * (3.0 + u * (-15.0 + u * (105.0 + u * (-945.0 + u * 10395.0)))));
    return -0.5 * t * t - std::log(t) - kLogSqrt2Pi + std::log(series);
}

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("phi_inv needs p in (0, 1)");

    // Acklam's rational approximation (~1e-9), then one Newton step
    // against phi brings it to full double accuracy.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double pdf = std::exp(-0.5 * x * x - kLogSqrt2Pi);
    if (pdf > 0.0) x -= (phi(x) - p) / pdf;
    return x;
}

PhiCEnvelope phi_c_envelope(double t) {
    if (t < 0.0) throw NegativeArgument("phi_c_envelope needs t >= 0");
    double gauss = std::sqrt(kTwoOverPi) * std::exp(-0.5 * t * t);
    return PhiCEnvelope{gauss / (t + std::sqrt(t * t + 4.0)),
                        gauss / (t + std::sqrt(t * t + kEightOverPi))};
}

}  // namespace bht
