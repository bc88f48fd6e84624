#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bht/core.hpp"
#include "bht/errors.hpp"
#include "bht/np_exact.hpp"
#include "bht/variational.hpp"
#include "oracles.hpp"

using namespace bht;

namespace {
LLRSpectrum worked_spectrum() {
    return llr_spectrum(validate_pair({"a", "b"}, {0.5, 0.5}, {0.9, 0.1}));
}

LLRSpectrum point_mass_spectrum() {
    return llr_spectrum(validate_pair({"a", "b"}, {0.4, 0.6}, {0.4, 0.6}));
}

// all atom ratios plus midpoints of the gaps between them, plus the ends
std::vector<double> lambda_sweep(const LLRSpectrum& s) {
    std::vector<double> ratios;
    for (const Atom& a : s.atoms) ratios.push_back(std::exp(-a.z));
    std::sort(ratios.begin(), ratios.end());
    std::vector<double> sweep{0.0};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (i > 0) sweep.push_back(0.5 * (ratios[i - 1] + ratios[i]));
        sweep.push_back(ratios[i]);
    }
    sweep.push_back(ratios.empty() ? 1.0 : 2.0 * ratios.back());
    return sweep;
}
}  // namespace

TEST_CASE("objective value at the worked point") {
    LLRSpectrum s = worked_spectrum();
    // min(0.9, 0.1) + min(0.1, 0.1) - 0.2 * 0.5 = 0.2 - 0.1
    LambdaObjective obj = objective_lambda(s, 0.2, 0.5);
    CHECK(obj.value == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("objective vanishes at lambda = 0 and is alpha for identical hypotheses") {
    LLRSpectrum s = worked_spectrum();
    CHECK(objective_lambda(s, 0.0, 0.3).value == 0.0);
    LLRSpectrum pq = point_mass_spectrum();
    for (double alpha : {0.0, 0.25, 0.8, 1.0})
        CHECK(objective_lambda(pq, 1.0, alpha).value == doctest::Approx(alpha).epsilon(1e-14));
    CHECK_THROWS_AS(objective_lambda(s, -0.1, 0.5), NegativeLambda);
}

TEST_CASE("variational lambda route reproduces the worked example") {
    LLRSpectrum s = worked_spectrum();
    PowerResult pw = beta_variational_lambda(s, 0.5);
    CHECK(pw.test.lambda == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(pw.beta == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("variational lambda route at the endpoints") {
    LLRSpectrum s = worked_spectrum();
    CHECK(std::abs(beta_variational_lambda(s, 1.0).beta - beta_exact(s, 1.0).beta) <= 1e-12);
    LLRSpectrum pq = point_mass_spectrum();
    PowerResult pw = beta_variational_lambda(pq, 0.7);
    CHECK(pw.test.lambda == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pw.beta == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("lambda optimality condition: iff against the objective maximum") {
    oracle::PairSampler sampler(31);
    for (int trial = 0; trial < 60; ++trial) {
        LLRSpectrum s = llr_spectrum(sampler.grid64(2 + trial % 8));
        for (int k = 0; k <= 8; ++k) {
            double alpha = k / 8.0;
            double best = beta_exact(s, alpha).beta;
            for (double lambda : lambda_sweep(s)) {
                double value = objective_lambda(s, lambda, alpha).value;
                CHECK(value <= best + 1e-12);  // weak duality
                bool optimal = check_lambda_optimality(s, lambda, alpha);
                bool attains = value >= best - 1e-12;
                CHECK(optimal == attains);
            }
        }
    }
}

TEST_CASE("lambda strictly inside a gap with mismatched mass is suboptimal") {
    // 3 atoms with distinct ratios; a lambda between two ratios is optimal
    // only when the cumulative mass below it equals alpha exactly
    auto pair = validate_pair({"a", "b", "c"}, {0.25, 0.25, 0.5}, {0.5, 0.25, 0.25});
    LLRSpectrum s = llr_spectrum(pair);
    // ratios: 2.0, 1.0, 0.5 -> P-mass of {ratio <= 0.7} is 0.5
    CHECK(check_lambda_optimality(s, 0.7, 0.5));
    CHECK_FALSE(check_lambda_optimality(s, 0.7, 0.4));
    CHECK(check_lambda_optimality(s, 1.0, 0.6));
}

TEST_CASE("identical hypotheses: every alpha accepts lambda = 1") {
    LLRSpectrum pq = point_mass_spectrum();
    for (double alpha : {0.0, 0.2, 1.0}) CHECK(check_lambda_optimality(pq, 1.0, alpha));
}

TEST_CASE("strong duality against the exact route") {
    oracle::PairSampler sampler(32);
    for (int trial = 0; trial < 100; ++trial) {
        LLRSpectrum s = llr_spectrum(sampler.continuous(15, 0.25));
        for (int k = 0; k <= 16; ++k) {
            double alpha = k / 16.0;
            CHECK(std::abs(beta_variational_lambda(s, alpha).beta -
                           beta_exact(s, alpha).beta) <= 1e-12);
        }
    }
}

TEST_CASE("objective is concave in lambda") {
    oracle::PairSampler sampler(33);
    for (int trial = 0; trial < 30; ++trial) {
        LLRSpectrum s = llr_spectrum(sampler.continuous(8));
        auto sweep = lambda_sweep(s);
        for (std::size_t i = 0; i + 2 < sweep.size(); ++i) {
            double a = sweep[i], b = sweep[i + 2];
            double mid = 0.5 * (a + b);
            double lhs = objective_lambda(s, mid, 0.4).value;
            double rhs = 0.5 * (objective_lambda(s, a, 0.4).value +
                                objective_lambda(s, b, 0.4).value);
            CHECK(lhs >= rhs - 1e-12);
        }
    }
}

TEST_CASE("tail integral closed form at the stated points") {
    LLRSpectrum s = worked_spectrum();
    double zmax = s.atoms.back().z;
    CHECK(tail_integral(s, zmax + 1.0) ==
          doctest::Approx(std::exp(-(zmax + 1.0))).epsilon(1e-14));
    LLRSpectrum pq = point_mass_spectrum();
    CHECK(tail_integral(pq, -1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tail_integral(pq, 1e6) <= 1e-300);
    CHECK(std::exp(log_tail_integral(pq, -1.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail integral equals its segment-sum form everywhere") {
    oracle::PairSampler sampler(34);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        LLRSpectrum s = llr_spectrum(sampler.continuous(2 + trial % 30, 0.15));
        double lo = s.atoms.empty() ? -1.0 : s.atoms.front().z;
        double hi = s.atoms.empty() ? 1.0 : s.atoms.back().z;
        double r = lo + (hi - lo) * (trial % 97) / 96.0 + shift(sampler.rng);
        CHECK(std::abs(tail_integral(s, r) - tail_integral_quadrature(s, r)) <= 1e-12);
    }
}

TEST_CASE("variational CDF route reproduces the worked example") {
    LLRSpectrum s = worked_spectrum();
    PowerResult pw = beta_variational_cdf(s, 0.5);
    CHECK(pw.test.z_boundary == doctest::Approx(std::log(5.0 / 9.0)).epsilon(1e-15));
    CHECK(pw.beta == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("variational CDF route endpoints") {
    LLRSpectrum pq = point_mass_spectrum();
    for (double eps : {0.0, 0.25, 0.75}) {
        PowerResult pw = beta_variational_cdf(pq, eps);
        CHECK(pw.test.z_boundary == 0.0);
        CHECK(pw.beta == doctest::Approx(1.0 - eps).epsilon(1e-14));
    }
    CHECK(beta_variational_cdf(pq, 1.0).beta == 0.0);
    LLRSpectrum s = worked_spectrum();
    CHECK(beta_variational_cdf(s, 1.0).beta == 0.0);
}

TEST_CASE("CDF route equals the exact route") {
    oracle::PairSampler sampler(35);
    for (int trial = 0; trial < 100; ++trial) {
        LLRSpectrum s = llr_spectrum(sampler.continuous(12, 0.25));
        for (int k = 0; k <= 16; ++k) {
            double eps = k / 16.0;
            CHECK(std::abs(beta_variational_cdf(s, eps).beta -
                           beta_exact(s, 1.0 - eps).beta) <= 1e-12);
        }
    }
}

TEST_CASE("R optimality condition brackets the CDF crossing") {
    LLRSpectrum s = worked_spectrum();
    double z0 = s.atoms[0].z;
    CHECK(check_r_optimality(s, z0, 0.25));
    CHECK(check_r_optimality(s, z0, 0.5));
    CHECK_FALSE(check_r_optimality(s, z0, 0.75));
    CHECK_FALSE(check_r_optimality(s, z0 - 0.5, 0.25));
}

TEST_CASE("q tail sanity identity when F(R) hits epsilon exactly") {
    // four atoms with cumulative masses 0.25, 0.5, 0.75, 1
    auto pair = validate_pair({"a", "b", "c", "d"}, {0.25, 0.25, 0.25, 0.25},
                              {0.55, 0.25, 0.15, 0.05});
    LLRSpectrum s = llr_spectrum(pair);
    double eps = 0.5;
    PowerResult pw = beta_variational_cdf(s, eps);
    double r_star = pw.test.z_boundary;
    CHECK(std::abs(sanity_q_tail(s, r_star) - pw.beta) <= 1e-12);
}

TEST_CASE("q tail endpoints") {
    LLRSpectrum s = worked_spectrum();
    CHECK(sanity_q_tail(s, -100.0) == doctest::Approx(1.0 - s.q_orphan).epsilon(1e-13));
    CHECK(sanity_q_tail(s, 100.0) == 0.0);
}
