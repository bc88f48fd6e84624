#pragma once

// The two variational routes to the same power:
//
//   beta_alpha = max_{lambda >= 0} ( sum_w min(Q, lambda P) - lambda (1 - alpha) )
//   beta_{1-eps} = max_R ( int_R^inf F(z) e^{-z} dz - e^{-R} eps )
//
// with F the CDF of L under P. Optimal lambda / R are characterized by
// bracketing conditions on the CDF rather than by derivatives, so both are
// located by a single pass over the atoms. The tail integral has a closed
// form (integration by parts):
//
//   int_R^inf F(z) e^{-z} dz = F(R) e^{-R} + sum_{z > R} p e^{-z}
//
// and tail_integral_quadrature recomputes it segment-by-segment from the
// CDF side as an independent check of that identity.
//
// Convention: alpha_accept is the acceptance level; epsilon = 1 -
// alpha_accept is the type-I budget. Each operation names which it takes.

#include "bht/core.hpp"
#include "bht/np_exact.hpp"

namespace bht {

struct LambdaObjective {
    double lambda;
    double value;
};

struct CdfObjective {
    double r;
    double value;
};

/// sum_w min(Q, lambda P) - lambda (1 - alpha_accept); lambda >= 0.
LambdaObjective objective_lambda(const LLRSpectrum& spectrum, double lambda,
                                 double alpha_accept);

/// tail_integral(R) - e^{-R} epsilon at an arbitrary threshold R.
CdfObjective objective_cdf(const LLRSpectrum& spectrum, double r, double epsilon);

/// Picks lambda* = e^{-z*} at the atom where the descending-z cumulative
/// P-mass crosses alpha_accept and evaluates the objective there.
PowerResult beta_variational_lambda(const LLRSpectrum& spectrum, double alpha_accept);

/// P{Q/P < lambda} <= alpha_accept <= P{Q/P <= lambda}, evaluated exactly
/// from atom masses.
bool check_lambda_optimality(const LLRSpectrum& spectrum, double lambda,
                             double alpha_accept);

/// Closed form of int_R^inf F(z) e^{-z} dz.
double tail_integral(const LLRSpectrum& spectrum, double r);
double log_tail_integral(const LLRSpectrum& spectrum, double r);

/// Same integral, summed segment-by-segment from the step CDF.
double tail_integral_quadrature(const LLRSpectrum& spectrum, double r);

/// Picks R* at the atom where the ascending-z cumulative P-mass crosses
/// epsilon; returns tail_integral(R*) - e^{-R*} epsilon. Any R in the
/// optimal bracket yields the same value; the atom's z is reported.
PowerResult beta_variational_cdf(const LLRSpectrum& spectrum, double epsilon);

/// P{L < R} <= epsilon <= P{L <= R}.
bool check_r_optimality(const LLRSpectrum& spectrum, double r, double epsilon);

/// Q{L > R}; equals the power when F(R) = epsilon exactly.
double sanity_q_tail(const LLRSpectrum& spectrum, double r);

}  // namespace bht
