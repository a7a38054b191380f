// Acceptance suite: every check the library is contractually required to
// satisfy, one line of output per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ucl/certificates.hpp"
#include "ucl/channels.hpp"
#include "ucl/eig.hpp"
#include "ucl/sim.hpp"
#include "ucl/symgroup.hpp"
#include "ucl/tester.hpp"

using namespace ucl;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool check(bool condition, std::string& detail, const std::string& message) {
    if (!condition && detail.empty()) {
        detail = message;
    }
    return condition;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool criterion_gamma_consistency(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (int d = 2; d <= 3; ++d) {
        for (int n = 1; n <= 4; ++n) {
            std::int64_t sum = 0;
            for (const auto& p : partitions(n, d)) {
                sum += dim_u(p, d) * dim_u(p, d);
            }
            const std::int64_t direct = binomial(n + d * d - 1, n);
            ok &= check(direct == sum && gamma_factor(n, d) == direct, detail,
                        "mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d));
        }
    }
    ok &= check(elapsed_seconds(start) < 1.0, detail, "runtime exceeded 1 s");
    return ok;
}

bool criterion_worked_examples(std::string& detail) {
    const LabeledOperator s1 = build_S(1, 2);
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    bool ok = check(max_abs_diff(s1.mat, half) == 0.0, detail, "build_S(1,2) differs from I/2");

    const LabeledOperator s2 = build_S(2, 2);
    ComplexMatrix singlet(4, 4);
    singlet(1, 1) = singlet(2, 2) = cplx(0.5, 0.0);
    singlet(1, 2) = singlet(2, 1) = cplx(-0.5, 0.0);
    const ComplexMatrix triplet = ComplexMatrix::identity(4) - singlet;
    // Coefficient on each sector.
    const double c_singlet = hs_inner(singlet, s2.mat).real() / 1.0;
    const double c_triplet = hs_inner(triplet, s2.mat).real() / 3.0;
    ok &= check(std::abs(c_singlet - 0.1) < 1e-12, detail, "singlet coefficient not 1/10");
    ok &= check(std::abs(c_triplet - 0.3) < 1e-12, detail, "triplet coefficient not 3/10");
    ComplexMatrix recon = singlet;
    recon *= cplx(0.1, 0.0);
    ComplexMatrix t3 = triplet;
    t3 *= cplx(0.3, 0.0);
    recon += t3;
    ok &= check(max_abs_diff(recon, s2.mat) < 1e-12, detail,
                "build_S(2,2) is not diagonal on the sectors");
    return ok;
}

bool criterion_achievability(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (auto [d, n1] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}}) {
        const Tester t = build_min_error(n1, d, 0.5);
        const double on_m1 = outcome_probabilities(t, m1(n1, d))[t.outcome_index("same")];
        const double on_m2 = outcome_probabilities(t, m2(n1, d))[t.outcome_index("same")];
        const double gamma = static_cast<double>(gamma_factor(n1, d));
        const std::string where = " at d=" + std::to_string(d) + " n1=" + std::to_string(n1);
        ok &= check(std::abs(on_m1 - 1.0) <= 1e-10, detail, "Tr(Pi1 M1) != 1" + where);
        ok &= check(std::abs(on_m2 - 1.0 / gamma) <= 1e-10, detail,
                    "Tr(Pi1 M2) != 1/gamma" + where);
    }
    ok &= check(elapsed_seconds(start) < 300.0, detail, "runtime exceeded 5 min");
    return ok;
}

bool criterion_strong_duality(std::string& detail) {
    bool ok = true;
    for (auto [n1, d] :
         {std::pair{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}, {3, 3}}) {
        const double gamma = static_cast<double>(gamma_factor(n1, d));
        for (double p : {0.1, 1.0 / (1.0 + gamma), 0.5, 0.9}) {
            const Tester t = build_min_error(n1, d, p);
            const DualCertificate cert = build_dual_min_error(n1, d, p);
            const double primal = min_error_primal_value(t, p);
            const std::string where = " at n1=" + std::to_string(n1) + " d=" + std::to_string(d) +
                                      " p=" + std::to_string(p);
            ok &= check(std::abs(primal - cert.lambda) <= 1e-10, detail,
                        "primal and dual differ" + where);
            ok &= check(verify_dual_min_error(cert, n1, d, p).all_pass(), detail,
                        "dual certificate infeasible" + where);
        }
    }
    return ok;
}

bool criterion_m2_bound(std::string& detail) {
    bool ok = true;
    for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
        const double gamma = static_cast<double>(gamma_factor(n, d));
        ComplexMatrix gap = m2(n, d).mat;
        ComplexMatrix scaled = m1(n, d).mat;
        scaled *= cplx(1.0 / gamma, 0.0);
        gap -= scaled;
        const double lo = min_eigenvalue(gap);
        const std::string where = " at d=" + std::to_string(d) + " n=" + std::to_string(n);
        ok &= check(lo >= -1e-10, detail, "M2 - M1/gamma not PSD" + where);
        ok &= check(lo <= 1e-8, detail, "M2 - M1/gamma not tight" + where);
    }
    return ok;
}

bool criterion_unambiguous(std::string& detail) {
    bool ok = true;
    for (auto [d, n1] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}}) {
        const Tester t = build_unambiguous(n1, d);
        const double gamma = static_cast<double>(gamma_factor(n1, d));
        const auto on_m1 = outcome_probabilities(t, m1(n1, d));
        const auto on_m2 = outcome_probabilities(t, m2(n1, d));
        const std::size_t diff = t.outcome_index("different");
        const std::string where = " at d=" + std::to_string(d) + " n1=" + std::to_string(n1);
        ok &= check(on_m1[diff] <= 1e-10, detail, "Tr(M1 Pi2) not zero" + where);
        ok &= check(std::abs(on_m2[diff] - (1.0 - 1.0 / gamma)) <= 1e-10, detail,
                    "Tr(M2 Pi2) != 1 - 1/gamma" + where);
        for (double p : {0.3, 0.5, 0.9}) {
            const double expected = p + (1.0 - p) / gamma;
            ok &= check(std::abs(unambiguous_primal_value(t, p) - expected) <= 1e-10, detail,
                        "p_? mismatch" + where);
        }
    }
    return ok;
}

bool criterion_circuit_equivalence(std::string& detail) {
    bool ok = true;
    for (int d : {2, 3}) {
        for (int n1 : {1, 2}) {
            RngStream rng(101, static_cast<std::uint64_t>(d * 10 + n1));
            double worst = 0.0;
            for (int trial = 0; trial < 100; ++trial) {
                const ComplexMatrix u1 = haar_unitary(d, rng);
                const ComplexMatrix u2 = haar_unitary(d, rng);
                const auto a = circuit_outcome_probs(u1, u2, n1, CircuitForm::dagger);
                const auto b = circuit_outcome_probs(u1, u2, n1, CircuitForm::conjugate);
                worst = std::max({worst, std::abs(a.first - b.first),
                                  std::abs(a.second - b.second)});
            }
            ok &= check(worst <= 1e-10, detail,
                        "circuit forms differ by " + std::to_string(worst) + " at d=" +
                            std::to_string(d) + " n1=" + std::to_string(n1));
        }
    }
    return ok;
}

bool criterion_monte_carlo(std::string& detail) {
    struct Case {
        Task task;
        int n;
        double expected;
    };
    bool ok = true;
    for (const Case& c : {Case{Task::min_error, 1, 0.875}, Case{Task::min_error, 2, 0.95},
                          Case{Task::unambiguous, 1, 0.625}, Case{Task::unambiguous, 2, 0.55}}) {
        const auto start = std::chrono::steady_clock::now();
        SimConfig cfg;
        cfg.d = 2;
        cfg.n1 = cfg.n2 = c.n;
        cfg.p = 0.5;
        cfg.samples = 10000;
        cfg.seed = 1;
        cfg.task = c.task;
        const SimResult res = simulate(cfg);
        const std::string where =
            " for " + to_string(c.task) + " n1=n2=" + std::to_string(c.n);
        ok &= check(std::abs(res.estimate - c.expected) <= 3.0 * res.std_error, detail,
                    "estimate " + std::to_string(res.estimate) + " outside 3 sigma of " +
                        std::to_string(c.expected) + where);
        ok &= check(std::abs(*res.analytic - c.expected) < 1e-12, detail,
                    "analytic value mismatch" + where);
        ok &= check(elapsed_seconds(start) < 120.0, detail, "runtime exceeded 2 min" + where);
    }
    return ok;
}

bool criterion_sweep(std::string& detail) {
    const auto rows = sweep(3, 2, 0.5, {3, 4, 5, 6, 7, 8});
    bool ok = check(rows.size() == 6, detail, "row count");
    double prev = 0.0;
    for (const auto& row : rows) {
        ok &= check(row.unitary.has_value(), detail, "unitary column blank inside the region");
        ok &= check(std::abs(*row.unitary - 0.975) < 1e-12, detail, "plateau value");
        ok &= check(row.state > prev, detail, "state column not increasing");
        ok &= check(row.state < 0.875, detail, "state column reached the known-state limit");
        prev = row.state;
    }
    ok &= check(std::abs(rows[0].state - 0.78125) < 1e-12, detail, "state value at n2=3");
    return ok;
}

bool criterion_state_comparison(std::string& detail) {
    bool ok = true;
    for (auto [n1, n2] : {std::pair{1, 1}, {2, 2}, {3, 3}, {1, 3}}) {
        for (double p : {0.2, 0.5, 0.8}) {
            const std::string where = " at n1=" + std::to_string(n1) +
                                      " n2=" + std::to_string(n2) + " p=" + std::to_string(p);
            const double primal = state_comparison_primal(n1, n2, 2, p);
            const double expected = pasp_state(n1, n2, 2, p).value;
            ok &= check(std::abs(primal - expected) <= 1e-10, detail,
                        "POVM value differs from the closed form" + where);
            ok &= check(verify_state_dual(n1, n2, 2, p).all_pass(), detail,
                        "state dual certificate failed" + where);
        }
    }
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"gamma consistency (binomial vs irrep sum)", criterion_gamma_consistency},
        {"worked-example fidelity of build_S", criterion_worked_examples},
        {"achievability traces of the optimal tester", criterion_achievability},
        {"strong duality across the certificate grid", criterion_strong_duality},
        {"tight operator bound M2 >= M1/gamma", criterion_m2_bound},
        {"unambiguous optimum and p_?", criterion_unambiguous},
        {"dagger/conjugate circuit equivalence", criterion_circuit_equivalence},
        {"monte carlo reproduction of closed forms", criterion_monte_carlo},
        {"sweep plateau vs growing state curve", criterion_sweep},
        {"state-comparison POVM and certificates", criterion_state_comparison},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2zu %-48s %s%s%s\n", i + 1, criteria[i].name.c_str(),
                    pass ? "PASS" : "FAIL", detail.empty() ? "" : " - ", detail.c_str());
        std::fflush(stdout);
        if (!pass) failures++;
    }
    return failures == 0 ? 0 : 1;
}
