#pragma once

// Standard normal CDF, complement, log-complement and inverse. erfc-based
// so both tails keep full relative accuracy; the log switches to an
// asymptotic series once the linear value would lose precision.

namespace bht {

double phi(double t);
double phi_c(double t);

/// ln Phi^C(t), finite far past the linear underflow point.
double log_phi_c(double t);

/// Inverse CDF on (0, 1); rational initial guess plus one Newton step.
double phi_inv(double p);

struct PhiCEnvelope {
    double lo;
    double hi;
};

/// Two-sided elementary bounds on Phi^C(t) for t >= 0:
///   sqrt(2/pi) e^{-t^2/2} / (t + sqrt(t^2 + 4))    <= Phi^C(t)
///   sqrt(2/pi) e^{-t^2/2} / (t + sqrt(t^2 + 8/pi)) >= Phi^C(t)
PhiCEnvelope phi_c_envelope(double t);

}  // namespace bht
