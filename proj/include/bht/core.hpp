#pragma once

// Distribution pairs and their log-likelihood-ratio spectrum.
//
// Everything downstream (exact Neyman-Pearson power, both variational
// routes, the Gaussian surrogate, the large-deviation machinery) consumes
// only the distribution of L(w) = ln(P(w)/Q(w)) under P. That distribution
// is stored as:
//   * atoms      — finite L values with their P-masses, sorted ascending,
//   * p_inf      — P-mass of outcomes with Q(w) = 0 (L = +inf),
//   * q_orphan   — Q-mass of outcomes with P(w) = 0 (invisible under P).
// Q-masses are recovered by change of measure: q = p * e^{-z} per atom.

#include <cstddef>
#include <string>
#include <vector>

namespace bht {

struct DiscretePair {
    std::vector<std::string> support;
    std::vector<double> p;
    std::vector<double> q;

    std::size_t size() const { return support.size(); }
};

/// Checks lengths, nonnegativity, distinct labels and normalization.
/// Sums within 1e-9 of 1 are renormalized; larger deviations are errors.
DiscretePair validate_pair(std::vector<std::string> support, std::vector<double> p,
                           std::vector<double> q);

struct Atom {
    double z;       // ln(p/q), nats
    double p_mass;  // > 0
};

struct LLRSpectrum {
    std::vector<Atom> atoms;  // strictly increasing z, all finite
    double p_inf = 0.0;
    double q_orphan = 0.0;

    // Total Q-mass of the finite atoms, 1 - q_orphan up to rounding.
    double finite_q_mass() const;
    // Total P-mass of the finite atoms, 1 - p_inf exactly as stored.
    double finite_p_mass() const;
};

/// Reduces a validated pair to its spectrum. z is computed in extended
/// precision and equal values are merged (1e-14 relative tolerance).
LLRSpectrum llr_spectrum(const DiscretePair& pair);

inline constexpr std::size_t kDefaultAtomCap = 10'000'000;

/// Spectrum of (P^n, Q^n): n-fold convolution of the atoms, with
/// p_inf/q_orphan composed as 1-(1-x)^n. Throws AtomExplosion when the
/// merged atom count would exceed `atom_cap`.
LLRSpectrum iid_product(const LLRSpectrum& spectrum, long n,
                        std::size_t atom_cap = kDefaultAtomCap);

// Right-continuous step CDF of L under P: F(z) = P{L <= z}.
struct StepCdf {
    std::vector<double> z;  // jump points, strictly increasing
    std::vector<double> f;  // cumulative values at the jumps

    double value(double at) const;
    double total() const { return f.empty() ? 0.0 : f.back(); }
};

StepCdf cdf(const LLRSpectrum& spectrum);

}  // namespace bht
