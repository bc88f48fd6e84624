#pragma once

// Large-deviation route to the exponent of the power.
//
// For an i.i.d. base spectrum with cumulant generating function
// Lambda(t) = log E_P[e^{tL}], the lower-tail rate function is the
// Legendre transform
//   E_1(z) = sup_{t <= 0} ( t z - Lambda(t) ),
// finite on [z_min, D], zero at and above the mean D, +inf below the
// support. Plugging the approximation F_n(nz) ~ e^{-n E_1(z)} into the CDF
// variational formula gives the surrogate objective
//   f_n(r, R) = n int_R^inf e^{-n(E_1(z) + z)} dz - e^{-n(R + r)}
// whose maximizer satisfies r = E_1(R), and the exponents
//   E_{2,n}(r) = -(1/n) log max_R f_n(r, R)       (surrogate)
//   E_n(r)    = -(1/n) log beta_{1-e^{-nr}}(P_n, Q_n)   (exact)

#include <utility>

#include "bht/core.hpp"

namespace bht {

// Rate-function view of a base spectrum with p_inf = 0. Construction is
// cheap and the object is immutable; every evaluation is a fresh
// Legendre maximization (safe under concurrent calls).
class RateModel {
public:
    explicit RateModel(const LLRSpectrum& base);

    double cgf(double t) const;         // log E_P e^{tL}
    double cgf_deriv(double t) const;   // tilted mean
    double cgf_second(double t) const;  // tilted variance

    /// E_1(z); 0 for z >= mean, +inf below the bottom of the support.
    double rate(double z) const;

    /// Maximizing tilt t*(z) <= 0 for z in (z_min, mean); 0 above.
    double tilt(double z) const;

    double mean() const { return mean_; }
    double z_min() const { return z_min_; }
    double z_max() const { return z_max_; }
    double rate_at_z_min() const { return rate_at_z_min_; }  // -ln p(z_min)

private:
    std::vector<Atom> atoms_;
    std::vector<double> log_p_;
    double mean_;
    double z_min_;
    double z_max_;
    double rate_at_z_min_;
};

/// Free-function forms over a base spectrum (one-shot construction).
double cgf(const LLRSpectrum& base, double t);
double rate_function(const LLRSpectrum& base, double z);

// f_n can be negative left of the optimum, so it is carried as
// sign * e^{log_abs}.
struct SignedLog {
    double log_abs;
    int sign;  // -1, 0, +1

    double value() const;
};

/// The surrogate objective, quadrature in the log domain (1e-8 relative).
SignedLog f_n(const RateModel& rate, double r, double big_r, long n);

/// Solves r = E_1(R) on the decreasing branch [z_min, mean].
double optimal_R(const RateModel& rate, double r);

enum class ExponentMethod { quadrature, laplace };

struct ExponentResult {
    double r;
    long n;
    double e2n;       // nats
    double r_star;    // maximizing R
    double en_exact;  // filled by callers that also run the exact route; NaN otherwise
};

/// E_{2,n}(r) by either method. `quadrature` maximizes f_n around
/// optimal_R with a golden-section polish; `laplace` evaluates the
/// integral by a second-order expansion at the integrand's dominating
/// point (interior or boundary).
ExponentResult E2n(const RateModel& rate, double r, long n, ExponentMethod method);

/// Exact exponent: builds the n-fold product and evaluates the power at
/// rejection budget e^{-nr} entirely in the log domain.
double En_exact(const LLRSpectrum& base, double r, long n,
                std::size_t atom_cap = kDefaultAtomCap);

/// Measured multiplicative CDF gaps (delta_l, delta_h) of Eq-style
/// e^{-n E_1(z) - n delta_l} <= F_n(nz) <= e^{-n E_1(z) + n delta_h},
/// taken as suprema over the product spectrum's jump structure.
std::pair<double, double> measured_deltas(const LLRSpectrum& product, const RateModel& rate,
                                          long n);

}  // namespace bht
