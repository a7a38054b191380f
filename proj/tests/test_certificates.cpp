#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ucl/certificates.hpp"
#include "ucl/channels.hpp"
#include "ucl/symgroup.hpp"
#include "ucl/tester.hpp"

using namespace ucl;

TEST_CASE("closed-form minimum-error values") {
    CHECK(pasp_unitary(1, 1, 2, 0.5).value == doctest::Approx(0.875).epsilon(1e-12));
    CHECK(pasp_unitary(3, 3, 2, 0.5).value == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(pasp_unitary(1, 1, 2, 0.1).value == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(pasp_unitary(1, 1, 2, 0.1).regime == Regime::guess);
    CHECK(pasp_unitary(1, 1, 2, 0.5).regime == Regime::tester);
    // n2 does not change the value inside the region.
    CHECK(pasp_unitary(1, 7, 2, 0.5).value == pasp_unitary(1, 1, 2, 0.5).value);
}

TEST_CASE("minimum-error formula refuses outside the proven region") {
    CHECK_THROWS_AS(pasp_unitary(1, 1, 3, 0.5), std::domain_error);
    CHECK_NOTHROW(pasp_unitary(1, 2, 3, 0.5));
    CHECK_THROWS_AS(pasp_unitary(2, 3, 3, 0.5), std::domain_error);
}

TEST_CASE("both branches agree at the threshold") {
    for (auto [n1, d] : {std::pair{1, 2}, {2, 2}, {1, 3}}) {
        const double gamma = static_cast<double>(gamma_factor(n1, d));
        const double threshold = 1.0 / (1.0 + gamma);
        const double guess = 1.0 - threshold;
        const double tester = 1.0 - (1.0 - threshold) / gamma;
        CHECK(guess == doctest::Approx(tester).epsilon(1e-14));
        CHECK(pasp_unitary(n1, (d - 1) * n1, d, threshold).value ==
              doctest::Approx(guess).epsilon(1e-14));
    }
}

TEST_CASE("closed-form inconclusive probabilities") {
    CHECK(p_inconclusive(1, 2, 0.5).value == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(p_inconclusive(2, 2, 0.5).value == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(p_inconclusive(1, 2, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form state comparison values") {
    CHECK(pasp_state(3, 3, 2, 0.5).value == doctest::Approx(0.78125).epsilon(1e-12));
    CHECK(pasp_state(1, 1, 2, 0.5).value == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(pasp_state(2, 5, 2, 0.3).value == pasp_state(5, 2, 2, 0.3).value);

    // Strictly increasing in the second copy count, approaching the
    // known-state limit 1 - (1-p)/d_sym(n1) from below.
    double prev = 0.0;
    for (int k = 3; k <= 12; ++k) {
        const double value = pasp_state(3, k, 2, 0.5).value;
        CHECK(value > prev);
        CHECK(value < 0.875);
        prev = value;
    }
    CHECK(std::abs(pasp_state(3, 1000000, 2, 0.5).value - 0.875) < 1e-5);
}

TEST_CASE("minimum-error dual certificates carry the closed-form bound") {
    CHECK(build_dual_min_error(1, 2, 0.5).lambda == doctest::Approx(0.875).epsilon(1e-12));
    CHECK(build_dual_min_error(2, 2, 0.6).lambda == doctest::Approx(0.96).epsilon(1e-12));

    const DualCertificate guess = build_dual_min_error(1, 2, 0.1);
    CHECK(guess.lambda == doctest::Approx(0.9).epsilon(1e-12));
    ComplexMatrix expected = m2(1, 2).mat;
    expected *= cplx(0.9, 0.0);
    CHECK(max_abs_diff(guess.omegas[0].mat, expected) < 1e-14);
}

TEST_CASE("minimum-error dual certificate is feasible") {
    const DualCertificate cert = build_dual_min_error(2, 2, 0.6);
    const auto report = verify_dual_min_error(cert, 2, 2, 0.6);
    CHECK(report.all_pass());
    // The chain conditions hold with equality.
    CHECK(std::abs(report.find("trace_H2_chain")->residual) < 1e-12);
    CHECK(std::abs(report.find("trace_H1_lambda")->residual) < 1e-12);

    DualCertificate broken = cert;
    broken.lambda -= 0.01;
    const auto bad = verify_dual_min_error(broken, 2, 2, 0.6);
    CHECK_FALSE(bad.all_pass());
    CHECK_FALSE(bad.find("trace_H1_lambda")->pass);

    // One slot: the lambda condition is an equality there too.
    const auto one_slot = verify_dual_min_error(build_dual_min_error(1, 2, 0.5), 1, 2, 0.5);
    CHECK(one_slot.all_pass());
    CHECK(std::abs(one_slot.find("trace_H1_lambda")->residual) < 1e-12);
}

TEST_CASE("strong duality on a small grid") {
    for (auto [n1, d] : {std::pair{1, 2}, {2, 2}, {1, 3}}) {
        const double gamma = static_cast<double>(gamma_factor(n1, d));
        for (double p : {0.1, 1.0 / (1.0 + gamma), 0.5, 0.9}) {
            const Tester t = build_min_error(n1, d, p);
            const DualCertificate cert = build_dual_min_error(n1, d, p);
            CHECK(std::abs(min_error_primal_value(t, p) - cert.lambda) < 1e-10);
            CHECK(verify_dual_min_error(cert, n1, d, p).all_pass());
        }
    }
}

TEST_CASE("unambiguous dual certificate") {
    const DualCertificate cert = build_dual_unambiguous(1, 2);
    CHECK(cert.lambda == doctest::Approx(0.75).epsilon(1e-12));
    REQUIRE(cert.eta.has_value());
    CHECK(*cert.eta == doctest::Approx(0.25).epsilon(1e-12));

    // M2 - eta M1 - Omega_1 vanishes by construction.
    ComplexMatrix zero = m2(1, 2).mat;
    ComplexMatrix scaled = m1(1, 2).mat;
    scaled *= cplx(0.25, 0.0);
    zero -= scaled;
    zero -= cert.omegas[0].mat;
    CHECK(zero.max_abs() < 1e-14);

    CHECK(verify_dual_unambiguous(cert, 1, 2).all_pass());

    const DualCertificate cert22 = build_dual_unambiguous(2, 2);
    const auto report = verify_dual_unambiguous(cert22, 2, 2);
    CHECK(report.all_pass());
    CHECK(report.find("Omega1_psd")->pass);
    CHECK(report.find("lambda_attained")->pass);
}

TEST_CASE("state-comparison dual certificate") {
    // beta(1,1,2) = 4/3, threshold 3/7.
    const auto high = verify_state_dual(1, 1, 2, 0.8);
    CHECK(high.all_pass());
    CHECK(pasp_state(1, 1, 2, 0.8).value == doctest::Approx(0.85).epsilon(1e-12));

    const auto low = verify_state_dual(1, 1, 2, 0.2);
    CHECK(low.all_pass());
    CHECK(pasp_state(1, 1, 2, 0.2).value == doctest::Approx(0.8).epsilon(1e-12));

    CHECK(verify_state_dual(2, 2, 2, 0.5).all_pass());
}

TEST_CASE("state-comparison primal value matches the closed form") {
    for (auto [n1, n2] : {std::pair{1, 1}, {2, 2}, {1, 3}}) {
        for (double p : {0.2, 0.5, 0.9}) {
            CHECK(std::abs(state_comparison_primal(n1, n2, 2, p) -
                           pasp_state(n1, n2, 2, p).value) < 1e-10);
        }
    }
}
