#pragma once

// Power of the Gaussian CDF surrogate G(z) = Phi((z - D)/sqrt(V)) and the
// additive-gap sandwich machinery around it.
//
// With L ~ N(D, V) under P the optimal threshold and power have closed
// forms:
//   R_eps  = D + sqrt(V) PhiInv(eps)
//   beta   = e^{-D + V/2} PhiC(PhiInv(eps) + sqrt(V))
// gaussian_beta_quadrature integrates int_R^inf e^{-z} N(z; D, V) dz
// numerically as an independent route to the same number.
//
// If G - d_l <= F <= G + d_h pointwise, then the true power at budget eps
// is sandwiched:
//   gaussian_beta(eps + d_l) <= beta_true(eps) <= gaussian_beta(eps - d_h)
// with the conventions lower = 0 when eps + d_l >= 1 and upper = 1 when
// eps - d_h <= 0.

#include <utility>

#include "bht/core.hpp"
#include "bht/np_exact.hpp"

namespace bht {

struct GaussianModel {
    double d;  // mean of L under P, nats
    double v;  // variance, nats^2
    // additive CDF gap bounds, valid when G - d_l <= F <= G + d_h
    double d_l = 0.0;
    double d_h = 0.0;
};

/// Optimal threshold R = D + sqrt(V) PhiInv(epsilon).
double gaussian_R(const GaussianModel& model, double epsilon);

/// Closed-form power, evaluated in the log domain.
PowerResult gaussian_beta(const GaussianModel& model, double epsilon);

/// Adaptive quadrature of the defining integral; agrees with the closed
/// form to 1e-9 relative.
double gaussian_beta_quadrature(const GaussianModel& model, double epsilon);

/// Log of the large-V approximation e^{-D - sqrt(V) PhiInv(eps)} / sqrt(V).
double gaussian_beta_asymptotic(const GaussianModel& model, double epsilon);

struct SandwichResult {
    double lower;
    double upper;
    double epsilon;
    bool lower_degenerate;  // eps + d_l >= 1, lower fell back to 0
    bool upper_degenerate;  // eps - d_h <= 0, upper fell back to 1
};

SandwichResult sandwich(const GaussianModel& model, double epsilon);

struct Moments {
    double d;  // mean, nats
    double v;  // variance, nats^2
    double t;  // third absolute central moment, nats^3
};

/// Moments of L under P; requires p_inf = 0.
Moments moments(const LLRSpectrum& spectrum);

inline constexpr double kBerryEsseenConstant = 0.4748;

/// Uniform CDF gap C T / (V^{3/2} sqrt(n)) for the n-fold product of the
/// base spectrum, valid as both d_l and d_h.
double berry_esseen_gap(const LLRSpectrum& base, long n);

/// Smallest (d_l, d_h) with G - d_l <= F <= G + d_h everywhere, computed
/// exactly at the jumps of F.
std::pair<double, double> sup_gap(const StepCdf& f, const GaussianModel& model);

}  // namespace bht
