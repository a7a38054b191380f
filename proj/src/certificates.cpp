#include "ucl/certificates.hpp"

#include <cmath>
#include <stdexcept>

#include "ucl/eig.hpp"
#include "ucl/symgroup.hpp"

namespace ucl {

ClosedForm pasp_unitary(int n1, int n2, int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("pasp_unitary: p must lie in [0, 1]");
    }
    if (n2 < (d - 1) * n1) {
        throw std::domain_error(
            "pasp_unitary: formula not established for n2 < (d-1)*n1; refusing to guess");
    }
    const double gamma = static_cast<double>(gamma_factor(n1, d));
    const double threshold = 1.0 / (1.0 + gamma);
    ClosedForm out{ClosedForm::Kind::unitary_min_error, n1, n2, d, p, 0.0, Regime::guess};
    if (p <= threshold) {
        out.value = 1.0 - p;
    } else {
        out.value = 1.0 - (1.0 - p) / gamma;
        out.regime = Regime::tester;
    }
    return out;
}

ClosedForm p_inconclusive(int n1, int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("p_inconclusive: p must lie in [0, 1]");
    }
    const double gamma = static_cast<double>(gamma_factor(n1, d));
    ClosedForm out{ClosedForm::Kind::unitary_unambiguous, n1, 0, d, p, 0.0, Regime::tester};
    out.value = p + (1.0 - p) / gamma;
    return out;
}

double beta_factor(int n1, int n2, int d) {
    return static_cast<double>(d_sym(n1, d)) * static_cast<double>(d_sym(n2, d)) /
           static_cast<double>(d_sym(n1 + n2, d));
}

ClosedForm pasp_state(int n1, int n2, int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("pasp_state: p must lie in [0, 1]");
    }
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("pasp_state: n1 and n2 must be >= 1");
    }
    const double beta = beta_factor(n1, n2, d);
    // Pick the better of the two candidate strategies; this also resolves the
    // threshold tie consistently.
    const double guess_value = 1.0 - p;
    const double tester_value = 1.0 - (1.0 - p) / beta;
    ClosedForm out{ClosedForm::Kind::state_min_error, n1, n2, d, p, 0.0, Regime::guess};
    if (tester_value > guess_value) {
        out.value = tester_value;
        out.regime = Regime::tester;
    } else {
        out.value = guess_value;
    }
    return out;
}

DualCertificate build_dual_min_error(int n1, int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("build_dual_min_error: p must lie in [0, 1]");
    }
    const double gamma = static_cast<double>(gamma_factor(n1, d));
    const double threshold = 1.0 / (1.0 + gamma);

    DualCertificate cert;
    if (p <= threshold) {
        cert.lambda = 1.0 - p;
        for (int k = 1; k <= n1; ++k) {
            LabeledOperator omega = m2(k, d);
            omega.mat *= cplx(1.0 - p, 0.0);
            cert.omegas.push_back(std::move(omega));
        }
    } else {
        cert.lambda = 1.0 - (1.0 - p) / gamma;
        const double a = p - (1.0 - p) / gamma;
        for (int k = 1; k <= n1; ++k) {
            LabeledOperator omega = m2(k, d);
            omega.mat *= cplx(1.0 - p, 0.0);
            omega.mat += cplx(a, 0.0) * m1(k, d).mat;
            cert.omegas.push_back(std::move(omega));
        }
    }
    return cert;
}

namespace {

void check_chain_and_bound(VerificationReport& report, const DualCertificate& cert, int n1,
                           int d, double tol) {
    for (int k = 1; k <= n1; ++k) {
        const auto& omega = cert.omegas[static_cast<std::size_t>(k - 1)];
        report.add_psd("Omega" + std::to_string(k) + "_psd", min_eigenvalue(omega.mat), tol);
    }
    // Tr_{H_k} Omega_k - Omega_{k-1} (x) I_{K_k} <= 0
    for (int k = 2; k <= n1; ++k) {
        const auto& omega = cert.omegas[static_cast<std::size_t>(k - 1)];
        const ComplexMatrix traced =
            partial_trace(omega.mat, omega.space, {{FactorKind::H, k}});
        const auto& prev = cert.omegas[static_cast<std::size_t>(k - 2)];
        const ComplexMatrix bound = kron(prev.mat, ComplexMatrix::identity(d));
        report.add_psd("trace_H" + std::to_string(k) + "_chain",
                       min_eigenvalue(bound - traced), tol);
    }
    // Tr_{H_1} Omega_1 - lambda I <= 0
    const auto& omega1 = cert.omegas.front();
    const ComplexMatrix traced1 = partial_trace(omega1.mat, omega1.space, {{FactorKind::H, 1}});
    ComplexMatrix lambda_i = ComplexMatrix::identity(d);
    lambda_i *= cplx(cert.lambda, 0.0);
    report.add_psd("trace_H1_lambda", min_eigenvalue(lambda_i - traced1), tol);
}

}  // namespace

VerificationReport verify_dual_min_error(const DualCertificate& cert, int n1, int d, double p,
                                         double tol) {
    VerificationReport report;
    if (static_cast<int>(cert.omegas.size()) != n1) {
        report.add("omega_chain_length", 1.0, 0.0);
        return report;
    }
    const auto& omega_n = cert.omegas.back();

    // p M1 - Omega_n <= 0 and (1-p) M2 - Omega_n <= 0
    ComplexMatrix lhs1 = omega_n.mat;
    lhs1 -= cplx(p, 0.0) * m1(n1, d).mat;
    report.add_psd("pM1_below_OmegaN", min_eigenvalue(lhs1), tol);

    ComplexMatrix lhs2 = omega_n.mat;
    lhs2 -= cplx(1.0 - p, 0.0) * m2(n1, d).mat;
    report.add_psd("1mpM2_below_OmegaN", min_eigenvalue(lhs2), tol);

    check_chain_and_bound(report, cert, n1, d, tol);
    return report;
}

DualCertificate build_dual_unambiguous(int n1, int d) {
    const double gamma = static_cast<double>(gamma_factor(n1, d));
    DualCertificate cert;
    cert.lambda = 1.0 - 1.0 / gamma;
    cert.eta = 1.0 / gamma;
    for (int k = 1; k <= n1; ++k) {
        LabeledOperator omega = m2(k, d);
        omega.mat -= cplx(1.0 / gamma, 0.0) * m1(k, d).mat;
        cert.omegas.push_back(std::move(omega));
    }
    return cert;
}

VerificationReport verify_dual_unambiguous(const DualCertificate& cert, int n1, int d,
                                           double tol) {
    VerificationReport report;
    if (static_cast<int>(cert.omegas.size()) != n1 || !cert.eta.has_value()) {
        report.add("certificate_shape", 1.0, 0.0);
        return report;
    }
    const auto& omega_n = cert.omegas.back();

    // M2 - eta M1 - Omega_n <= 0
    ComplexMatrix lhs = omega_n.mat;
    lhs -= m2(n1, d).mat;
    lhs += cplx(*cert.eta, 0.0) * m1(n1, d).mat;
    report.add_psd("M2_minus_etaM1_below_OmegaN", min_eigenvalue(lhs), tol);

    check_chain_and_bound(report, cert, n1, d, tol);

    // The bound must be attained by the constructed tester.
    const Tester t = build_unambiguous(n1, d);
    const double achieved =
        outcome_probabilities(t, m2(n1, d))[t.outcome_index("different")];
    report.add("lambda_attained", std::abs(cert.lambda - achieved), tol);
    return report;
}

VerificationReport verify_state_dual(int n1, int n2, int d, double p, double tol) {
    VerificationReport report;
    const ClosedForm form = pasp_state(n1, n2, d, p);
    const double beta = beta_factor(n1, n2, d);
    const LabeledOperator r1 = rho1(n1, n2, d);
    const LabeledOperator r2 = rho2(n1, n2, d);

    ComplexMatrix omega = r2.mat;
    omega *= cplx(1.0 - p, 0.0);
    if (form.regime == Regime::tester) {
        omega += cplx(p - (1.0 - p) / beta, 0.0) * r1.mat;
    }

    ComplexMatrix lhs1 = omega;
    lhs1 -= cplx(p, 0.0) * r1.mat;
    report.add_psd("p_rho1_below_Omega", min_eigenvalue(lhs1), tol);

    ComplexMatrix lhs2 = omega;
    lhs2 -= cplx(1.0 - p, 0.0) * r2.mat;
    report.add_psd("1mp_rho2_below_Omega", min_eigenvalue(lhs2), tol);

    report.add("trace_Omega_equals_pasp", std::abs(omega.trace().real() - form.value), tol);
    return report;
}

double min_error_primal_value(const Tester& t, double p) {
    const auto p1 = outcome_probabilities(t, m1(t.n_slots, t.d));
    const auto p2 = outcome_probabilities(t, m2(t.n_slots, t.d));
    const std::size_t same = t.outcome_index("same");
    const std::size_t diff = t.outcome_index("different");
    return p * p1[same] + (1.0 - p) * p2[diff];
}

double unambiguous_primal_value(const Tester& t, double p) {
    const auto p1 = outcome_probabilities(t, m1(t.n_slots, t.d));
    const auto p2 = outcome_probabilities(t, m2(t.n_slots, t.d));
    const std::size_t inc = t.outcome_index("inconclusive");
    return p * p1[inc] + (1.0 - p) * p2[inc];
}

double state_comparison_primal(int n1, int n2, int d, double p) {
    const ClosedForm form = pasp_state(n1, n2, d, p);
    const LabeledOperator r1 = rho1(n1, n2, d);
    const LabeledOperator r2 = rho2(n1, n2, d);
    const std::size_t dim = r1.mat.rows();

    ComplexMatrix pi1(dim, dim);
    if (form.regime == Regime::tester) {
        pi1 = sym_projector(n1 + n2, d);
    }
    const ComplexMatrix pi2 = ComplexMatrix::identity(dim) - pi1;
    return p * hs_inner(pi1, r1.mat).real() + (1.0 - p) * hs_inner(pi2, r2.mat).real();
}

}  // namespace ucl
