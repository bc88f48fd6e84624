#include "bht/renyi.hpp"

#include <cmath>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"

namespace bht {

double g_s(const DiscretePair& pair, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw OrderOutOfRange("s must be in [0, 1]");
    LogSum sum;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        if (pair.p[i] > 0.0 && pair.q[i] > 0.0)
            sum.add(s * std::log(pair.p[i]) + (1.0 - s) * std::log(pair.q[i]));
    }
    return sum.value();
}

double renyi_divergence(const DiscretePair& pair, double s) {
    if (!(s > 0.0 && s < 1.0)) throw OrderOutOfRange("s must be in (0, 1)");
    return g_s(pair, s) / (s - 1.0);
}

double binary_entropy(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -s * std::log(s) - (1.0 - s) * std::log(1.0 - s);
}

double beta_bound_at_s(const DiscretePair& pair, double r, double s) {
    if (!(s > 0.0 && s < 1.0)) throw OrderOutOfRange("s must be in (0, 1)");
    if (r < 0.0) throw OutOfRange("r must be >= 0");
    double ds = renyi_divergence(pair, s);
    return -ds - s / (s - 1.0) * r + binary_entropy(s) / (s - 1.0);
}

RenyiCurve renyi_curve_at(const DiscretePair& pair, double r, double s) {
    return RenyiCurve{s, g_s(pair, s), renyi_divergence(pair, s),
                      beta_bound_at_s(pair, r, s)};
}

RenyiBound beta_bound(const DiscretePair& pair, double r) {
    if (r < 0.0) throw OutOfRange("r must be >= 0");
    constexpr double kEdge = 1e-6;
    if (g_s(pair, 0.5) == kNegInf) return RenyiBound{kNegInf, 0.5};  // disjoint supports

    auto body = [&](double s) { return beta_bound_at_s(pair, r, s); };

    // Unimodality of the body is not guaranteed, so bracket the minimum
    // with a coarse scan first.
    constexpr int kScan = 1024;
    double best_s = kEdge, best_v = body(kEdge);
    for (int i = 1; i <= kScan; ++i) {
        double s = kEdge + (1.0 - 2.0 * kEdge) * i / kScan;
        double v = body(s);
        if (v < best_v) {
            best_v = v;
            best_s = s;
        }
    }
    double step = (1.0 - 2.0 * kEdge) / kScan;
    double lo = std::max(kEdge, best_s - step);
    double hi = std::min(1.0 - kEdge, best_s + step);

    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = body(c), fd = body(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = body(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = body(d);
        }
    }
    double s_star = 0.5 * (a + b);
    double v_star = body(s_star);
    if (best_v < v_star) {
        s_star = best_s;
        v_star = best_v;
    }
    return RenyiBound{v_star, s_star};
}

}  // namespace bht
