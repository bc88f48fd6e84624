#pragma once

// Exact power of the optimal randomized likelihood-ratio test, straight
// from the definition. This is the ground-truth route the variational
// formulas are checked against.
//
// The acceptance region fills outcomes in increasing order of Q/P, i.e.
// decreasing z: Q-null outcomes (z = +inf) first, then finite atoms from
// the top, randomizing on the boundary atom so the type-I constraint is
// met with equality.

#include "bht/core.hpp"

namespace bht {

struct OptimalTest {
    double lambda;          // Q/P threshold, e^{-z_boundary}; 0 when the
                            // acceptance stays inside the z = +inf mass
    double z_boundary;      // boundary atom's z; +inf in the case above
    double delta;           // randomization weight on the boundary atom
    double achieved_alpha;  // equals the requested acceptance level
};

struct PowerResult {
    double beta;
    double log_beta;  // nats, -inf when beta == 0
    OptimalTest test;
    double alpha_accept;
};

/// Builds the optimal test at acceptance level alpha_accept in [0, 1].
OptimalTest np_test(const LLRSpectrum& spectrum, double alpha_accept);

/// beta at acceptance level alpha_accept; Q-mass of the accepted region,
/// accumulated in the log domain whenever a term underflows 1e-300.
PowerResult beta_exact(const LLRSpectrum& spectrum, double alpha_accept);

/// Same power parametrized by the rejection budget epsilon = 1 - alpha.
/// The boundary is located from the rejection side, which stays exact when
/// epsilon is far below 1 ulp of 1 (product spectra at large n).
PowerResult beta_exact_rejection(const LLRSpectrum& spectrum, double epsilon);

}  // namespace bht
