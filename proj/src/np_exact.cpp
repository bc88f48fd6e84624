#include "bht/np_exact.hpp"

#include <algorithm>
#include <cmath>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"

namespace bht {

namespace {

constexpr double kLinearFloor = 1e-300;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Q-mass of the region {z > z_boundary} plus delta times the boundary
// atom's Q-mass. Linear accumulation with a log-sum-exp fallback once any
// term underflows the linear floor.
PowerResult accumulate_beta(const LLRSpectrum& spectrum, const OptimalTest& test,
                            double alpha_accept) {
    NeumaierSum linear;
    LogSum logsum;
    bool linear_ok = true;
    auto add_term = [&](double log_p, double z, double weight_log) {
        double log_q = log_p - z + weight_log;
        logsum.add(log_q);
        double term = std::exp(log_q);
        if (term < kLinearFloor) linear_ok = false;
        linear.add(term);
    };
    for (const Atom& a : spectrum.atoms) {
        if (a.z > test.z_boundary) {
            add_term(std::log(a.p_mass), a.z, 0.0);
        } else if (a.z == test.z_boundary && test.delta > 0.0) {
            add_term(std::log(a.p_mass), a.z, std::log(test.delta));
        }
    }
    // z = +inf atoms carry no Q-mass; q_orphan is never accepted.
    double log_beta = logsum.value();
    double beta;
    if (linear_ok) {
        beta = clamp01(linear.value());
        log_beta = beta > 0.0 ? std::log(beta) : kNegInf;
    } else {
        beta = std::exp(log_beta);
    }
    return PowerResult{beta, log_beta, test, alpha_accept};
}

}  // namespace

OptimalTest np_test(const LLRSpectrum& spectrum, double alpha_accept) {
    if (!(alpha_accept >= 0.0 && alpha_accept <= 1.0))
        throw OutOfRange("alpha_accept must be in [0, 1]");

    // The z = +inf mass is accepted first: it costs nothing under Q.
    if (alpha_accept <= spectrum.p_inf || spectrum.atoms.empty()) {
        double delta = spectrum.p_inf > 0.0 ? clamp01(alpha_accept / spectrum.p_inf)
                                            : 0.0;
        return OptimalTest{0.0, kPosInf, delta, alpha_accept};
    }
    double before = spectrum.p_inf;
    for (auto it = spectrum.atoms.rbegin(); it != spectrum.atoms.rend(); ++it) {
        if (before + it->p_mass >= alpha_accept || std::next(it) == spectrum.atoms.rend()) {
            double delta = clamp01((alpha_accept - before) / it->p_mass);
            return OptimalTest{std::exp(-it->z), it->z, delta, alpha_accept};
        }
        before += it->p_mass;
    }
    // unreachable: the loop always terminates on the last atom
    throw Error("np_test: no boundary atom");
}

PowerResult beta_exact(const LLRSpectrum& spectrum, double alpha_accept) {
    return accumulate_beta(spectrum, np_test(spectrum, alpha_accept), alpha_accept);
}

PowerResult beta_exact_rejection(const LLRSpectrum& spectrum, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw OutOfRange("epsilon must be in [0, 1]");

    // Reject the cheapest P-mass first (ascending z); the boundary atom
    // keeps the leftover acceptance weight delta.
    double rejected = 0.0;
    for (std::size_t i = 0; i < spectrum.atoms.size(); ++i) {
        const Atom& a = spectrum.atoms[i];
        if (rejected + a.p_mass <= epsilon) {
            rejected += a.p_mass;
            continue;
        }
        double delta = clamp01(1.0 - (epsilon - rejected) / a.p_mass);
        OptimalTest test{std::exp(-a.z), a.z, delta, 1.0 - epsilon};
        return accumulate_beta(spectrum, test, 1.0 - epsilon);
    }
    // Budget swallows every finite atom; acceptance lives on the +inf mass.
    double delta = spectrum.p_inf > 0.0 ? clamp01((1.0 - epsilon) / spectrum.p_inf) : 0.0;
    OptimalTest test{0.0, kPosInf, delta, 1.0 - epsilon};
    return accumulate_beta(spectrum, test, 1.0 - epsilon);
}

}  // namespace bht
