#include "bht/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bht/errors.hpp"
#include "bht/logsum.hpp"

namespace bht {

namespace {

constexpr double kInputSumTol = 1e-9;
constexpr double kMergeRelTol = 1e-14;

void check_and_renormalize(std::vector<double>& v, const char* name) {
    NeumaierSum s;
    for (double x : v) {
        if (x < 0.0) throw NegativeMass(std::string(name) + " has a negative entry");
        s.add(x);
    }
    double sum = s.value();
    if (std::abs(sum - 1.0) > kInputSumTol)
        throw NotNormalized(std::string(name) + " sums to " + std::to_string(sum));
    if (sum != 1.0)
        for (double& x : v) x /= sum;
}

// Append (z, p) to `out`, merging into the last cluster when z lies within
// the relative tie tolerance of its representative. The representative is
// the mass-weighted mean of the cluster.
void emit_merged(std::vector<Atom>& out, double z, double p) {
    if (!out.empty()) {
        Atom& last = out.back();
        double scale = std::max(std::abs(z), std::abs(last.z));
        if (std::abs(z - last.z) <= kMergeRelTol * scale) {
            double m = last.p_mass + p;
            last.z = (last.z * last.p_mass + z * p) / m;
            last.p_mass = m;
            return;
        }
    }
    out.push_back(Atom{z, p});
}

std::vector<Atom> sort_and_merge(std::vector<Atom> raw) {
    std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) { return a.z < b.z; });
    std::vector<Atom> out;
    out.reserve(raw.size());
    for (const Atom& a : raw) emit_merged(out, a.z, a.p_mass);
    return out;
}

// Pair-merge of two sorted atom lists under addition of z and product of
// masses. Keeps the accumulator fully merged so its size is the honest
// merged atom count at every step.
std::vector<Atom> convolve(const std::vector<Atom>& a, const std::vector<Atom>& b,
                           std::size_t cap) {
    if (a.empty() || b.empty()) return {};
    constexpr std::size_t kMaterializeLimit = std::size_t(1) << 24;
    if (a.size() * b.size() <= kMaterializeLimit) {
        std::vector<Atom> raw;
        raw.reserve(a.size() * b.size());
        for (const Atom& x : a)
            for (const Atom& y : b) raw.push_back(Atom{x.z + y.z, x.p_mass * y.p_mass});
        std::vector<Atom> merged = sort_and_merge(std::move(raw));
        if (merged.size() > cap) throw AtomExplosion("product would have " +
                                                     std::to_string(merged.size()) + " atoms");
        return merged;
    }
    // Incremental path for heavily merging lattices: fold one shifted copy
    // of `a` at a time into the accumulator.
    std::vector<Atom> acc;
    for (const Atom& y : b) {
        std::vector<Atom> next;
        next.reserve(acc.size() + a.size());
        std::size_t i = 0, j = 0;
        while (i < acc.size() || j < a.size()) {
            double za = i < acc.size() ? acc[i].z : kPosInf;
            double zb = j < a.size() ? a[j].z + y.z : kPosInf;
            if (za <= zb) {
                emit_merged(next, acc[i].z, acc[i].p_mass);
                ++i;
            } else {
                emit_merged(next, zb, a[j].p_mass * y.p_mass);
                ++j;
            }
        }
        if (next.size() > cap)
            throw AtomExplosion("product would have more than " + std::to_string(cap) + " atoms");
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

DiscretePair validate_pair(std::vector<std::string> support, std::vector<double> p,
                           std::vector<double> q) {
    if (support.empty()) throw EmptySupport("support is empty");
    if (support.size() != p.size() || support.size() != q.size())
        throw LengthMismatch("support/p/q lengths differ");
    std::set<std::string> seen(support.begin(), support.end());
    if (seen.size() != support.size()) throw LengthMismatch("support labels are not distinct");
    check_and_renormalize(p, "p");
    check_and_renormalize(q, "q");
    return DiscretePair{std::move(support), std::move(p), std::move(q)};
}

double LLRSpectrum::finite_q_mass() const {
    NeumaierSum s;
    for (const Atom& a : atoms) s.add(a.p_mass * std::exp(-a.z));
    return s.value();
}

double LLRSpectrum::finite_p_mass() const {
    NeumaierSum s;
    for (const Atom& a : atoms) s.add(a.p_mass);
    return s.value();
}

LLRSpectrum llr_spectrum(const DiscretePair& pair) {
    LLRSpectrum s;
    std::vector<Atom> raw;
    NeumaierSum pinf, orphan;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        double pi = pair.p[i], qi = pair.q[i];
        if (pi > 0.0 && qi > 0.0) {
            long double ratio = static_cast<long double>(pi) / static_cast<long double>(qi);
            raw.push_back(Atom{static_cast<double>(logl(ratio)), pi});
        } else if (pi > 0.0) {
            pinf.add(pi);
        } else if (qi > 0.0) {
            orphan.add(qi);
        }
        // outcomes with p = q = 0 carry no mass on either side
    }
    s.atoms = sort_and_merge(std::move(raw));
    s.p_inf = pinf.value();
    s.q_orphan = orphan.value();
    return s;
}

LLRSpectrum iid_product(const LLRSpectrum& spectrum, long n, std::size_t atom_cap) {
    if (n < 1) throw OutOfRange("iid_product needs n >= 1");
    if (n == 1) return spectrum;

    LLRSpectrum out;
    // A block is Q-null as soon as one coordinate is; same for P on the
    // orphan side.
    out.p_inf = 1.0 - std::pow(1.0 - spectrum.p_inf, static_cast<double>(n));
    out.q_orphan = 1.0 - std::pow(1.0 - spectrum.q_orphan, static_cast<double>(n));

    // square-and-multiply over the convolution semigroup
    std::vector<Atom> result;
    std::vector<Atom> power = spectrum.atoms;
    unsigned long k = static_cast<unsigned long>(n);
    bool have_result = false;
    while (k > 0) {
        if (k & 1UL) {
            result = have_result ? convolve(result, power, atom_cap) : power;
            have_result = true;
        }
        k >>= 1;
        if (k > 0) power = convolve(power, power, atom_cap);
    }
    out.atoms = std::move(result);
    return out;
}

double StepCdf::value(double at) const {
    auto it = std::upper_bound(z.begin(), z.end(), at);
    if (it == z.begin()) return 0.0;
    return f[static_cast<std::size_t>(it - z.begin()) - 1];
}

StepCdf cdf(const LLRSpectrum& spectrum) {
    StepCdf out;
    out.z.reserve(spectrum.atoms.size());
    out.f.reserve(spectrum.atoms.size());
    NeumaierSum cum;
    for (const Atom& a : spectrum.atoms) {
        cum.add(a.p_mass);
        out.z.push_back(a.z);
        out.f.push_back(cum.value());
    }
    return out;
}

}  // namespace bht
