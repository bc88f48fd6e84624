#pragma once

// Small accumulation helpers used throughout: log-domain sums that cannot
// underflow and compensated linear sums for 1e-12-grade identities.

#include <cmath>
#include <limits>

namespace bht {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b)
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b), requires a >= b; -inf when equal
inline double log_diff(double a, double b) {
    if (b == kNegInf) return a;
    if (a <= b) return kNegInf;
    return a + std::log1p(-std::exp(b - a));
}

// log(1 - e^x) for x <= 0
inline double log1mexp(double x) {
    // switch point ln(1/2) keeps both branches well conditioned
    if (x >= 0.0) return kNegInf;
    return x > -0.6931471805599453 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

// Streaming log-sum-exp with a running max shift.
class LogSum {
public:
    void add(double t) {
        if (t == kNegInf) return;
        if (sum_ == 0.0) {
            max_ = t;
            sum_ = 1.0;
            return;
        }
        if (t <= max_) {
            sum_ += std::exp(t - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - t) + 1.0;
            max_ = t;
        }
    }
    double value() const { return sum_ == 0.0 ? kNegInf : max_ + std::log(sum_); }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

// Neumaier compensated summation.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace bht
