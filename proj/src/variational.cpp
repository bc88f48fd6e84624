#include "bht/variational.hpp"

#include <algorithm>
#include <cmath>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"

namespace bht {

LambdaObjective objective_lambda(const LLRSpectrum& spectrum, double lambda,
                                 double alpha_accept) {
    if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
    // min(Q, lambda P) vanishes both on the z = +inf atoms (Q = 0) and on
    // the orphan mass (P = 0), so only finite atoms contribute.
    NeumaierSum s;
    for (const Atom& a : spectrum.atoms)
        s.add(a.p_mass * std::min(std::exp(-a.z), lambda));
    return LambdaObjective{lambda, s.value() - lambda * (1.0 - alpha_accept)};
}

CdfObjective objective_cdf(const LLRSpectrum& spectrum, double r, double epsilon) {
    return CdfObjective{r, tail_integral(spectrum, r) - std::exp(-r) * epsilon};
}

PowerResult beta_variational_lambda(const LLRSpectrum& spectrum, double alpha_accept) {
    // The bracketing condition picks the same boundary atom as the exact
    // test; the value is then the objective, not the accepted Q-mass.
    OptimalTest test = np_test(spectrum, alpha_accept);
    double value = objective_lambda(spectrum, test.lambda, alpha_accept).value;
    double beta = std::max(0.0, value);
    return PowerResult{beta, beta > 0.0 ? std::log(beta) : kNegInf, test, alpha_accept};
}

bool check_lambda_optimality(const LLRSpectrum& spectrum, double lambda,
                             double alpha_accept) {
    if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
    NeumaierSum less, equal;
    if (lambda > 0.0) less.add(spectrum.p_inf);  // ratio 0 on the +inf atoms
    for (const Atom& a : spectrum.atoms) {
        double ratio = std::exp(-a.z);
        if (ratio < lambda)
            less.add(a.p_mass);
        else if (ratio == lambda)
            equal.add(a.p_mass);
    }
    double below = less.value();
    double below_or_eq = below + equal.value() + (lambda > 0.0 ? 0.0 : spectrum.p_inf);
    return below <= alpha_accept && alpha_accept <= below_or_eq;
}

double tail_integral(const LLRSpectrum& spectrum, double r) {
    NeumaierSum tail;
    double f_at_r = 0.0;
    for (const Atom& a : spectrum.atoms) {
        if (a.z <= r)
            f_at_r += a.p_mass;
        else
            tail.add(std::exp(std::log(a.p_mass) - a.z));
    }
    double head = f_at_r > 0.0 ? std::exp(std::log(f_at_r) - r) : 0.0;
    return head + tail.value();
}

double log_tail_integral(const LLRSpectrum& spectrum, double r) {
    LogSum s;
    double f_at_r = 0.0;
    for (const Atom& a : spectrum.atoms) {
        if (a.z <= r)
            f_at_r += a.p_mass;
        else
            s.add(std::log(a.p_mass) - a.z);
    }
    if (f_at_r > 0.0) s.add(std::log(f_at_r) - r);
    return s.value();
}

double tail_integral_quadrature(const LLRSpectrum& spectrum, double r) {
    // Exact segment sums of the piecewise-constant integrand: over
    // [a, b) with F constant the antiderivative of F e^{-z} is -F e^{-z}.
    const auto& atoms = spectrum.atoms;
    std::size_t idx = 0;
    double cum = 0.0;
    while (idx < atoms.size() && atoms[idx].z <= r) cum += atoms[idx++].p_mass;

    NeumaierSum s;
    auto segment = [](double f, double a, double b) {
        // f * (e^{-a} - e^{-b}), b > a, overflow-safe via the log of f e^{-a}
        return -std::exp(std::log(f) - a) * std::expm1(-(b - a));
    };
    if (idx == atoms.size()) return cum > 0.0 ? std::exp(std::log(cum) - r) : 0.0;
    if (cum > 0.0) s.add(segment(cum, r, atoms[idx].z));
    for (std::size_t i = idx; i + 1 < atoms.size(); ++i) {
        cum += atoms[i].p_mass;
        s.add(segment(cum, atoms[i].z, atoms[i + 1].z));
    }
    cum += atoms.back().p_mass;
    s.add(std::exp(std::log(cum) - atoms.back().z));
    return s.value();
}

PowerResult beta_variational_cdf(const LLRSpectrum& spectrum, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw OutOfRange("epsilon must be in [0, 1]");
    double alpha_accept = 1.0 - epsilon;

    // R* = the atom where the ascending cumulative P-mass crosses epsilon.
    std::size_t boundary = spectrum.atoms.size();
    double cum_before = 0.0;
    for (std::size_t i = 0; i < spectrum.atoms.size(); ++i) {
        if (cum_before + spectrum.atoms[i].p_mass >= epsilon) {
            boundary = i;
            break;
        }
        cum_before += spectrum.atoms[i].p_mass;
    }
    if (boundary == spectrum.atoms.size()) {
        // epsilon exceeds the finite mass: the optimum runs off to R = +inf
        // and the objective's supremum is 0.
        OptimalTest test{0.0, kPosInf, 0.0, alpha_accept};
        return PowerResult{0.0, kNegInf, test, alpha_accept};
    }

    const Atom& b = spectrum.atoms[boundary];
    double r_star = b.z;
    // tail_integral(R*) - e^{-R*} eps with the head terms combined first:
    // e^{-R*} (F(R*) - eps) avoids cancellation between the two O(e^{-R*})
    // quantities.
    double head_mass = cum_before + b.p_mass - epsilon;
    NeumaierSum linear;
    LogSum logsum;
    if (head_mass > 0.0) {
        double t = std::log(head_mass) - r_star;
        linear.add(std::exp(t));
        logsum.add(t);
    }
    for (std::size_t i = boundary + 1; i < spectrum.atoms.size(); ++i) {
        double t = std::log(spectrum.atoms[i].p_mass) - spectrum.atoms[i].z;
        linear.add(std::exp(t));
        logsum.add(t);
    }
    double beta = std::max(0.0, linear.value());
    double log_beta = beta >= 1e-300 ? std::log(beta) : logsum.value();
    if (beta < 1e-300) beta = std::exp(log_beta);
    double delta = b.p_mass > 0.0 ? head_mass / b.p_mass : 0.0;
    OptimalTest test{std::exp(-r_star), r_star, std::min(1.0, std::max(0.0, delta)),
                     alpha_accept};
    return PowerResult{beta, log_beta, test, alpha_accept};
}

bool check_r_optimality(const LLRSpectrum& spectrum, double r, double epsilon) {
    NeumaierSum below, at;
    for (const Atom& a : spectrum.atoms) {
        if (a.z < r)
            below.add(a.p_mass);
        else if (a.z == r)
            at.add(a.p_mass);
    }
    double less = below.value();
    return less <= epsilon && epsilon <= less + at.value();
}

double sanity_q_tail(const LLRSpectrum& spectrum, double r) {
    // Q{L > R}: orphan outcomes sit at L = -inf and never qualify; the
    // z = +inf atoms carry no Q-mass.
    NeumaierSum s;
    for (const Atom& a : spectrum.atoms)
        if (a.z > r) s.add(std::exp(std::log(a.p_mass) - a.z));
    return s.value();
}

}  // namespace bht
