#include "bht/largedev.hpp"

#include <algorithm>
#include <cmath>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"
#include "bht/normal.hpp"
#include "bht/np_exact.hpp"
#include "bht/quad.hpp"

namespace bht {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

RateModel::RateModel(const LLRSpectrum& base) {
    if (base.p_inf > 0.0)
        throw InfiniteLlr("rate model needs p_inf = 0; L is infinite with positive P-mass");
    if (base.atoms.empty()) throw OutOfRange("rate model needs a nonempty spectrum");
    atoms_ = base.atoms;
    log_p_.reserve(atoms_.size());
    NeumaierSum mean;
    for (const Atom& a : atoms_) {
        log_p_.push_back(std::log(a.p_mass));
        mean.add(a.p_mass * a.z);
    }
    mean_ = mean.value();
    z_min_ = atoms_.front().z;
    z_max_ = atoms_.back().z;
    rate_at_z_min_ = -log_p_.front();
}

double RateModel::cgf(double t) const {
    LogSum s;
    for (std::size_t i = 0; i < atoms_.size(); ++i) s.add(log_p_[i] + t * atoms_[i].z);
    return s.value();
}

double RateModel::cgf_deriv(double t) const {
    double shift = kNegInf;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        shift = std::max(shift, log_p_[i] + t * atoms_[i].z);
    double w_sum = 0.0, wz_sum = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        double w = std::exp(log_p_[i] + t * atoms_[i].z - shift);
        w_sum += w;
        wz_sum += w * atoms_[i].z;
    }
    return wz_sum / w_sum;
}

double RateModel::cgf_second(double t) const {
    double shift = kNegInf;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        shift = std::max(shift, log_p_[i] + t * atoms_[i].z);
    double w_sum = 0.0, wz_sum = 0.0, wzz_sum = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        double w = std::exp(log_p_[i] + t * atoms_[i].z - shift);
        w_sum += w;
        wz_sum += w * atoms_[i].z;
        wzz_sum += w * atoms_[i].z * atoms_[i].z;
    }
    double m1 = wz_sum / w_sum;
    return std::max(0.0, wzz_sum / w_sum - m1 * m1);
}

double RateModel::tilt(double z) const {
    if (z >= mean_) return 0.0;
    // bracket: the tilted mean is increasing in t and tends to z_min
    double lo = -1.0;
    while (cgf_deriv(lo) > z && lo > -1e8) lo *= 2.0;
    if (cgf_deriv(lo) > z) return lo;  // z is essentially at the bottom of the support
    double hi = 0.0;
    // safeguarded Newton on cgf'(t) = z
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        double g = cgf_deriv(t) - z;
        if (g > 0.0)
            hi = t;
        else
            lo = t;
        double curv = cgf_second(t);
        double step = curv > 0.0 ? g / curv : 0.0;
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(t))) break;
        t = next;
    }
    return t;
}

double RateModel::rate(double z) const {
    if (z >= mean_) return 0.0;
    if (z < z_min_) return kPosInf;
    if (z == z_min_) return rate_at_z_min_;
    double t = tilt(z);
    return t * z - cgf(t);
}

double cgf(const LLRSpectrum& base, double t) { return RateModel(base).cgf(t); }

double rate_function(const LLRSpectrum& base, double z) { return RateModel(base).rate(z); }

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

namespace {

// log of n * int_R^inf e^{-n (E_1(z) + z)} dz. The exponent
// phi(z) = E_1(z) + z is convex with its minimum at the Q-tilted mean
// cgf'(-1), so the numeric part [max(R, z_min), D] is split at the peak
// and the analytic exponential tail beyond D is added in closed form.
double log_fn_integral(const RateModel& rate, double big_r, long n) {
    double d = rate.mean();
    double lo = std::max(big_r, rate.z_min());
    if (lo >= d) return -static_cast<double>(n) * lo;

    double nn = static_cast<double>(n);
    double zq = rate.cgf_deriv(-1.0);
    double zs = std::min(std::max(zq, lo), d);
    double m = rate.rate(zs) + zs;
    auto g = [&](double z) {
        double phi_z = rate.rate(z) + z;
        return std::isfinite(phi_z) ? std::exp(-nn * (phi_z - m)) : 0.0;
    };
    double coarse = adaptive_simpson(g, lo, zs, 1e-6 * (d - lo)) +
                    adaptive_simpson(g, zs, d, 1e-6 * (d - lo));
    double tol = 1e-9 * std::max(coarse, 1e-280);
    double j = adaptive_simpson(g, lo, zs, tol) + adaptive_simpson(g, zs, d, tol);

    double log_main = j > 0.0 ? std::log(nn) - nn * m + std::log(j) : kNegInf;
    return log_add(log_main, -nn * d);
}

SignedLog combine(double log_pos, double log_neg) {
    if (log_pos > log_neg) return SignedLog{log_diff(log_pos, log_neg), +1};
    if (log_pos < log_neg) return SignedLog{log_diff(log_neg, log_pos), -1};
    return SignedLog{kNegInf, 0};
}

}  // namespace

SignedLog f_n(const RateModel& rate, double r, double big_r, long n) {
    if (n < 1) throw OutOfRange("f_n needs n >= 1");
    double li = log_fn_integral(rate, big_r, n);
    double ls = -static_cast<double>(n) * (big_r + r);
    return combine(li, ls);
}

double optimal_R(const RateModel& rate, double r) {
    if (r < 0.0) throw OutOfRange("optimal_R needs r >= 0");
    if (r == 0.0) return rate.mean();
    if (r > rate.rate_at_z_min())
        throw OutOfRange("r exceeds the rate function's range on the lower branch");
    double lo = rate.z_min(), hi = rate.mean();
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (rate.rate(mid) > r)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

double e2n_quadrature(const RateModel& rate, double r, double r_star, long n) {
    // the analytic maximizer is r_star; the golden polish guards the
    // quadrature noise around it
    auto objective = [&](double big_r) {
        SignedLog v = f_n(rate, r, big_r, n);
        return v.sign > 0 ? v.log_abs : kNegInf;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = r_star - 0.25, b = r_star + 0.25;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = objective(d);
        }
    }
    double best = std::max(objective(0.5 * (a + b)), objective(r_star));
    return -best / static_cast<double>(n);
}

double e2n_laplace(const RateModel& rate, double r, double r_star, long n) {
    double nn = static_cast<double>(n);
    double d = rate.mean();
    double zq = rate.cgf_deriv(-1.0);
    double z0 = std::max(r_star, zq);
    double log_integral;
    if (z0 >= d) {
        log_integral = -nn * std::max(r_star, d);
    } else {
        double t0 = rate.tilt(z0);
        double phi0 = rate.rate(z0) + z0;
        double a = 1.0 + t0;          // phi'(z0)
        double curv = rate.cgf_second(t0);
        if (!(curv > 0.0)) {
            log_integral = -nn * phi0 - std::log(std::max(a, 1e-300));
        } else {
            double b = 1.0 / curv;    // phi''(z0)
            double u0 = r_star - z0;  // 0 at the boundary, negative inside
            double arg = (u0 + a / b) * std::sqrt(nn * b);
            log_integral = std::log(nn) - nn * phi0 + nn * a * a / (2.0 * b) +
                           0.5 * (kLog2Pi - std::log(nn * b)) + log_phi_c(arg);
        }
    }
    SignedLog v = combine(log_integral, -nn * (r_star + r));
    return v.sign > 0 ? -v.log_abs / nn : kPosInf;
}

}  // namespace

ExponentResult E2n(const RateModel& rate, double r, long n, ExponentMethod method) {
    if (n < 1) throw OutOfRange("E2n needs n >= 1");
    double r_star = optimal_R(rate, r);
    double e2n = method == ExponentMethod::quadrature ? e2n_quadrature(rate, r, r_star, n)
                                                      : e2n_laplace(rate, r, r_star, n);
    return ExponentResult{r, n, e2n, r_star, std::nan("")};
}

double En_exact(const LLRSpectrum& base, double r, long n, std::size_t atom_cap) {
    if (r < 0.0) throw OutOfRange("En_exact needs r >= 0");
    if (n < 1) throw OutOfRange("En_exact needs n >= 1");
    LLRSpectrum product = iid_product(base, n, atom_cap);
    double epsilon = std::exp(-static_cast<double>(n) * r);
    PowerResult pw = beta_exact_rejection(product, epsilon);
    return -pw.log_beta / static_cast<double>(n);
}

std::pair<double, double> measured_deltas(const LLRSpectrum& product, const RateModel& rate,
                                          long n) {
    double nn = static_cast<double>(n);
    double delta_l = 0.0, delta_h = 0.0;
    NeumaierSum cum;
    auto per_letter = [&](double big_z) {
        return std::min(std::max(big_z / nn, rate.z_min()), rate.z_max());
    };
    // F_n is flat between jumps while e^{-n E_1} rises, so the lower gap
    // peaks just before the next jump and the upper gap at the jump.
    for (std::size_t i = 0; i < product.atoms.size(); ++i) {
        cum.add(product.atoms[i].p_mass);
        double log_f = std::log(cum.value());
        double e1 = rate.rate(per_letter(product.atoms[i].z));
        delta_h = std::max(delta_h, log_f / nn + e1);
        if (i + 1 < product.atoms.size()) {
            double e1_next = rate.rate(per_letter(product.atoms[i + 1].z));
            delta_l = std::max(delta_l, -log_f / nn - e1_next);
        }
    }
    return {delta_l, delta_h};
}

}  // namespace bht
