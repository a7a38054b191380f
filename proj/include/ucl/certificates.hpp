#pragma once

#include <optional>
#include <vector>

#include "ucl/channels.hpp"
#include "ucl/report.hpp"
#include "ucl/tester.hpp"

namespace ucl {

enum class Regime { guess, tester };

/// A closed-form optimum value with the parameters it was evaluated at.
struct ClosedForm {
    enum class Kind { unitary_min_error, unitary_unambiguous, state_min_error };
    Kind kind;
    int n1 = 0;
    int n2 = 0;
    int d = 0;
    double p = 0.0;
    double value = 0.0;
    Regime regime = Regime::guess;
};

/// Optimal average success probability of minimum-error comparison of two
/// unknown unitary channels, valid for n2 >= (d-1)*n1: 1-p below the
/// threshold 1/(1+gamma), otherwise 1 - (1-p)/gamma. Independent of n2
/// inside the validity region. Outside it no formula is established and the
/// call refuses.
ClosedForm pasp_unitary(int n1, int n2, int d, double p);

/// Optimal inconclusive probability of unambiguous comparison:
/// p + (1-p)/gamma.
ClosedForm p_inconclusive(int n1, int d, double p);

/// Optimal average success probability of minimum-error pure-state
/// comparison with n1 and n2 copies; beta = d_sym(n1) d_sym(n2) /
/// d_sym(n1+n2) replaces gamma.
ClosedForm pasp_state(int n1, int n2, int d, double p);

double beta_factor(int n1, int n2, int d);

/// Feasible point of the dual problem: the operator chain, the bound, and
/// the extra multiplier of the unambiguous variant.
struct DualCertificate {
    std::vector<LabeledOperator> omegas;  // omegas[k-1] on the first k slots
    double lambda = 0.0;
    std::optional<double> eta;
};

/// Minimum-error certificate. Below the threshold: Omega_k = (1-p) M2^(k),
/// lambda = 1-p. Above: Omega_k = (p - (1-p)/gamma) M1^(k) + (1-p) M2^(k),
/// lambda = 1 - (1-p)/gamma.
DualCertificate build_dual_min_error(int n1, int d, double p);

/// Checks every dual feasibility condition as a PSD test; the residual of a
/// PSD check is the negated minimum eigenvalue.
VerificationReport verify_dual_min_error(const DualCertificate& cert, int n1, int d, double p,
                                         double tol = 1e-10);

/// Unambiguous certificate: Omega_k = M2^(k) - M1^(k)/gamma,
/// lambda = 1 - 1/gamma, eta = 1/gamma.
DualCertificate build_dual_unambiguous(int n1, int d);

/// Feasibility plus the tie to the achieved value: lambda must equal
/// Tr(M2 Pi_different) of the constructed unambiguous tester.
VerificationReport verify_dual_unambiguous(const DualCertificate& cert, int n1, int d,
                                           double tol = 1e-10);

/// State-comparison certificate check: builds the regime's Omega, tests
/// p rho1 - Omega <= 0 and (1-p) rho2 - Omega <= 0, and compares Tr(Omega)
/// to the closed form.
VerificationReport verify_state_dual(int n1, int n2, int d, double p, double tol = 1e-10);

/// Achieved primal value Tr(p M1 Pi_same + (1-p) M2 Pi_different) of a
/// comparison tester.
double min_error_primal_value(const Tester& t, double p);

/// Achieved inconclusive probability Tr((p M1 + (1-p) M2) Pi_inconclusive).
double unambiguous_primal_value(const Tester& t, double p);

/// Achieved value of the optimal state-comparison POVM (the symmetric
/// projector above the threshold, the constant guess below).
double state_comparison_primal(int n1, int n2, int d, double p);

}  // namespace ucl
