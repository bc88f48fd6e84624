#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bht/errors.hpp"
#include "bht/normal.hpp"
#include "oracles.hpp"

using namespace bht;

TEST_CASE("symmetry points") {
    CHECK(phi(0.0) == 0.5);
    CHECK(phi_inv(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("phi_c(1) against density quadrature") {
    // frozen from the quadrature oracle (agrees with erfc to 1e-15)
    CHECK(oracle::phi_c_quadrature(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
    CHECK(phi_c(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
}

TEST_CASE("phi + phi_c = 1 to machine precision") {
    for (double t = -37.0; t <= 37.0; t += 0.375)
        CHECK(std::abs(phi(t) + phi_c(t) - 1.0) <= 1e-15);
}

TEST_CASE("phi_inv round trip over the full stated range") {
    for (double lg = -10.0; lg <= -0.31; lg += 0.07) {
        double p = std::pow(10.0, lg);
        CHECK(std::abs(phi(phi_inv(p)) - p) <= 1e-12);
        CHECK(std::abs(phi(phi_inv(1.0 - p)) - (1.0 - p)) <= 1e-12);
    }
    CHECK(std::abs(phi(phi_inv(1e-10)) - 1e-10) <= 1e-12);
}

TEST_CASE("phi_inv rejects the boundary") {
    CHECK_THROWS_AS(phi_inv(0.0), DomainError);
    CHECK_THROWS_AS(phi_inv(1.0), DomainError);
    CHECK_THROWS_AS(phi_inv(-0.1), DomainError);
}

TEST_CASE("envelope brackets phi_c over [0, 40]") {
    for (double lg = -3.0; lg <= std::log10(40.0); lg += 0.05) {
        double t = std::pow(10.0, lg);
        PhiCEnvelope env = phi_c_envelope(t);
        double value = phi_c(t);
        CHECK(env.lo <= value);
        CHECK(value <= env.hi);
    }
    PhiCEnvelope at0 = phi_c_envelope(0.0);
    CHECK(std::abs(at0.hi - 0.5) <= 1e-15);
    CHECK(at0.lo == doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846) / 2.0)
                        .epsilon(1e-14));
    CHECK_THROWS_AS(phi_c_envelope(-1.0), NegativeArgument);
}

TEST_CASE("envelope bracket at t = 1 and tightness at t = 10") {
    PhiCEnvelope env1 = phi_c_envelope(1.0);
    CHECK(env1.lo <= 0.158655253931457);
    CHECK(0.158655253931457 <= env1.hi);
    PhiCEnvelope env10 = phi_c_envelope(10.0);
    CHECK((env10.hi - env10.lo) / phi_c(10.0) < 0.10);
}

TEST_CASE("log_phi_c agrees with the linear value and stays finite past it") {
    for (double t = -5.0; t <= 35.0; t += 0.25) {
        double linear = phi_c(t);
        CHECK(std::abs(std::exp(log_phi_c(t)) - linear) <= 1e-12 * linear);
    }
    // smooth across the series switch
    CHECK(std::abs(log_phi_c(std::nextafter(26.0, 27.0)) - log_phi_c(26.0)) <= 1e-12);
    // far past linear underflow
    double big = log_phi_c(100.0);
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(-0.5 * 1e4 - std::log(100.0) - 0.9189385332046727)
                     .epsilon(1e-6));
}
