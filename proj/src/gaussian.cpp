#include "bht/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"
#include "bht/normal.hpp"
#include "bht/quad.hpp"

namespace bht {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;

void require_variance(const GaussianModel& model) {
    if (!(model.v > 0.0)) throw DegenerateVariance("model variance must be > 0");
}

}  // namespace

double gaussian_R(const GaussianModel& model, double epsilon) {
    require_variance(model);
    return model.d + std::sqrt(model.v) * phi_inv(epsilon);
}

PowerResult gaussian_beta(const GaussianModel& model, double epsilon) {
    require_variance(model);
    double root_v = std::sqrt(model.v);
    double x = phi_inv(epsilon);
    double log_beta = (-model.d + 0.5 * model.v) + log_phi_c(x + root_v);
    double r = model.d + root_v * x;
    OptimalTest test{std::exp(-r), r, 0.0, 1.0 - epsilon};
    return PowerResult{std::exp(log_beta), log_beta, test, 1.0 - epsilon};
}

double gaussian_beta_quadrature(const GaussianModel& model, double epsilon) {
    require_variance(model);
    double r = gaussian_R(model, epsilon);
    double root_v = std::sqrt(model.v);
    double peak = model.d - model.v;  // mode of e^{-z} N(z; D, V)
    auto integrand = [&](double z) {
        double u = (z - model.d) / root_v;
        return std::exp(-z - 0.5 * u * u - kLogSqrt2Pi - std::log(root_v));
    };
    // beyond 8.5 surrogate standard deviations past max(R, peak) the
    // remaining tail is < 1e-13 of the integral
    double hi = std::max(r, peak) + 8.5 * root_v;
    double split = std::min(std::max(peak, r), hi);

    double scale = integrand(split) * std::min(hi - r, 2.5066282746310002 * root_v);
    double coarse_tol = std::max(1e-8 * scale, 5e-324);
    double coarse = adaptive_simpson(integrand, r, split, coarse_tol) +
                    adaptive_simpson(integrand, split, hi, coarse_tol);
    double tol = 1e-13 * std::max(coarse, 1e-300);
    return adaptive_simpson(integrand, r, split, tol) +
           adaptive_simpson(integrand, split, hi, tol);
}

double gaussian_beta_asymptotic(const GaussianModel& model, double epsilon) {
    require_variance(model);
    return -model.d - std::sqrt(model.v) * phi_inv(epsilon) - 0.5 * std::log(model.v);
}

SandwichResult sandwich(const GaussianModel& model, double epsilon) {
    require_variance(model);
    SandwichResult out{0.0, 1.0, epsilon, true, true};
    double lower_budget = epsilon + model.d_l;
    if (lower_budget < 1.0) {
        out.lower = gaussian_beta(model, lower_budget).beta;
        out.lower_degenerate = false;
    }
    double upper_budget = epsilon - model.d_h;
    if (upper_budget > 0.0) {
        out.upper = gaussian_beta(model, upper_budget).beta;
        out.upper_degenerate = false;
    }
    return out;
}

Moments moments(const LLRSpectrum& spectrum) {
    if (spectrum.p_inf > 0.0)
        throw InfiniteLlr("moments need p_inf = 0; L is infinite with positive P-mass");
    NeumaierSum mean;
    for (const Atom& a : spectrum.atoms) mean.add(a.p_mass * a.z);
    double d = mean.value();
    NeumaierSum var, third;
    for (const Atom& a : spectrum.atoms) {
        double c = a.z - d;
        var.add(a.p_mass * c * c);
        third.add(a.p_mass * std::abs(c * c * c));
    }
    return Moments{d, var.value(), third.value()};
}

double berry_esseen_gap(const LLRSpectrum& base, long n) {
    if (n < 1) throw OutOfRange("berry_esseen_gap needs n >= 1");
    Moments m = moments(base);
    if (!(m.v > 0.0)) throw DegenerateVariance("base spectrum has zero LLR variance");
    return kBerryEsseenConstant * m.t /
           (std::pow(m.v, 1.5) * std::sqrt(static_cast<double>(n)));
}

std::pair<double, double> sup_gap(const StepCdf& f, const GaussianModel& model) {
    require_variance(model);
    double root_v = std::sqrt(model.v);
    // F is flat between jumps while G increases, so F - G peaks at the
    // jumps (from the right) and G - F peaks just before them.
    double d_l = 0.0, d_h = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < f.z.size(); ++i) {
        double g = phi((f.z[i] - model.d) / root_v);
        d_h = std::max(d_h, f.f[i] - g);
        d_l = std::max(d_l, g - prev);
        prev = f.f[i];
    }
    // above the last jump F stays at its total while G climbs to 1
    d_l = std::max(d_l, 1.0 - f.total());
    return {d_l, d_h};
}

}  // namespace bht
