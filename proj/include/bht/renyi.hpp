#pragma once

// Renyi-divergence upper bound on the power:
//
//   g_s(P,Q) = log sum_w P(w)^s Q(w)^{1-s},   D_s = g_s / (s - 1)
//   log beta_{1-e^{-r}} <= inf_{s in (0,1)} -D_s - s r/(s-1) + h_b(s)/(s-1)
//
// with h_b the binary entropy in nats. The infimum is located by a coarse
// scan plus golden-section refinement on the open interval.

#include "bht/core.hpp"

namespace bht {

struct RenyiCurve {
    double s;
    double g_s;
    double d_s;          // Renyi divergence, nats
    double bound_value;  // bound body at this s, nats
};

/// log sum_w P^s Q^{1-s} for s in [0, 1]; terms with a zero on either side
/// drop out (0^s = 0). -inf on disjoint supports.
double g_s(const DiscretePair& pair, double s);

/// g_s / (s - 1), s in (0, 1) only.
double renyi_divergence(const DiscretePair& pair, double s);

/// -s ln s - (1-s) ln(1-s), endpoints by continuity.
double binary_entropy(double s);

/// Bound body at fixed s in (0, 1), r >= 0.
double beta_bound_at_s(const DiscretePair& pair, double r, double s);

RenyiCurve renyi_curve_at(const DiscretePair& pair, double r, double s);

struct RenyiBound {
    double bound;   // nats, upper bound on log beta_{1-e^{-r}}
    double s_star;  // argmin over (1e-6, 1-1e-6)
};

RenyiBound beta_bound(const DiscretePair& pair, double r);

}  // namespace bht
