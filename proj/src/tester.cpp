#include "ucl/tester.hpp"

#include <cmath>
#include <stdexcept>

#include "ucl/eig.hpp"
#include "ucl/symgroup.hpp"

namespace ucl {

namespace {

std::size_t pow_dim(int d, int n) {
    std::size_t out = 1;
    for (int i = 0; i < n; ++i) out *= static_cast<std::size_t>(d);
    return out;
}

// Grouped maximally entangled column vector sum_I |I>_K |I>_H on D x D.
ComplexMatrix grouped_phi(std::size_t block_dim) {
    ComplexMatrix v(block_dim * block_dim, 1);
    for (std::size_t i = 0; i < block_dim; ++i) {
        v(i * block_dim + i, 0) = cplx(1.0, 0.0);
    }
    return v;
}

LabeledOperator to_interleaved(ComplexMatrix grouped, int n, int d) {
    const FactorSpace gs = FactorSpace::grouped(n, static_cast<std::size_t>(d));
    ComplexMatrix inter = permute_factors(grouped, gs, grouped_to_interleaved_perm(n));
    return {std::move(inter), FactorSpace::interleaved(n, static_cast<std::size_t>(d))};
}

}  // namespace

std::size_t Tester::outcome_index(const std::string& name) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i] == name) return i;
    }
    throw std::invalid_argument("Tester: unknown outcome " + name);
}

LabeledOperator build_S(int n1, int d) {
    if (n1 < 1) {
        throw std::invalid_argument("build_S: n1 must be >= 1");
    }
    const auto sectors = irrep_sectors(n1, d);
    const std::size_t dim = pow_dim(d, n1);
    ComplexMatrix s(dim, dim);
    for (const auto& sector : sectors) {
        const double coeff =
            sector.q / (static_cast<double>(sector.dim_u) * static_cast<double>(sector.dim_v));
        s += cplx(coeff, 0.0) * isotypic_projector(sector.partition, d);
    }
    return {std::move(s), FactorSpace::inputs(n1, static_cast<std::size_t>(d))};
}

namespace {

Tester build_from_s(int n1, int d, bool unambiguous, bool trivial) {
    const LabeledOperator s = build_S(n1, d);
    const std::size_t block = pow_dim(d, n1);

    const ComplexMatrix s_tensor_i = kron(s.mat, ComplexMatrix::identity(block));
    ComplexMatrix conclusive_g(block * block, block * block);
    if (!trivial) {
        const ComplexMatrix w = s_tensor_i * grouped_phi(block);
        for (std::size_t r = 0; r < w.rows(); ++r) {
            for (std::size_t c = 0; c < w.rows(); ++c) {
                conclusive_g(r, c) = w(r, 0) * std::conj(w(c, 0));
            }
        }
    }
    ComplexMatrix rest_g = s_tensor_i - conclusive_g;

    Tester t;
    t.n_slots = n1;
    t.d = d;
    if (unambiguous) {
        t.outcomes = {"same", "different", "inconclusive"};
        LabeledOperator zero{ComplexMatrix(block * block, block * block),
                             FactorSpace::interleaved(n1, static_cast<std::size_t>(d))};
        t.operators.push_back(std::move(zero));
        t.operators.push_back(to_interleaved(std::move(rest_g), n1, d));
        t.operators.push_back(to_interleaved(std::move(conclusive_g), n1, d));
    } else {
        t.outcomes = {"same", "different"};
        t.operators.push_back(to_interleaved(std::move(conclusive_g), n1, d));
        t.operators.push_back(to_interleaved(std::move(rest_g), n1, d));
    }
    t.normalization = ParallelWitness{s};
    return t;
}

}  // namespace

Tester build_min_error(int n1, int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("build_min_error: p must lie in [0, 1]");
    }
    const double gamma = static_cast<double>(gamma_factor(n1, d));
    const double threshold = 1.0 / (1.0 + gamma);
    // At the threshold both branches achieve the same value; the trivial
    // tester needs no measurement.
    const bool trivial = p <= threshold;
    return build_from_s(n1, d, /*unambiguous=*/false, trivial);
}

Tester build_unambiguous(int n1, int d) {
    return build_from_s(n1, d, /*unambiguous=*/true, /*trivial=*/false);
}

VerificationReport verify_tester(const Tester& t, double tol) {
    VerificationReport report;

    ComplexMatrix sum;
    for (std::size_t i = 0; i < t.operators.size(); ++i) {
        const auto& op = t.operators[i].mat;
        const std::string name = "Pi_" + t.outcomes[i];
        report.add(name + "_hermitian", op.hermiticity_error(), tol);
        report.add_psd(name + "_psd", min_eigenvalue(op, 1.0), tol);
        if (i == 0) {
            sum = op;
        } else {
            sum += op;
        }
    }

    if (t.is_parallel()) {
        const auto& s = t.witness_s();
        const std::size_t block = s.mat.rows();
        ComplexMatrix expected_g = kron(s.mat, ComplexMatrix::identity(block));
        const FactorSpace gs = FactorSpace::grouped(t.n_slots, static_cast<std::size_t>(t.d));
        const ComplexMatrix expected =
            permute_factors(expected_g, gs, grouped_to_interleaved_perm(t.n_slots));
        report.add("sum_equals_S_tensor_I", max_abs_diff(sum, expected), tol);
        report.add("S_hermitian", s.mat.hermiticity_error(), tol);
        report.add_psd("S_psd", min_eigenvalue(s.mat, 1.0), tol);
        report.add("S_trace_one", std::abs(s.mat.trace() - cplx(1.0, 0.0)), tol);
    } else {
        const auto& chain = std::get<ChainWitness>(t.normalization).r;
        const int n = t.n_slots;
        if (static_cast<int>(chain.size()) != n) {
            report.add("chain_length", 1.0, 0.0);
            return report;
        }
        for (int k = 1; k <= n; ++k) {
            const auto& rk = chain[static_cast<std::size_t>(k - 1)];
            report.add("R" + std::to_string(k) + "_hermitian", rk.mat.hermiticity_error(), tol);
            report.add_psd("R" + std::to_string(k) + "_psd", min_eigenvalue(rk.mat, 1.0), tol);
        }
        const auto& rn = chain.back();
        const ComplexMatrix expected = kron(rn.mat, ComplexMatrix::identity(t.d));
        report.add("sum_equals_Rn_tensor_I", max_abs_diff(sum, expected), tol);
        for (int k = n; k >= 2; --k) {
            const auto& rk = chain[static_cast<std::size_t>(k - 1)];
            const ComplexMatrix lhs =
                partial_trace(rk.mat, rk.space, {{FactorKind::K, k}});
            const auto& rk1 = chain[static_cast<std::size_t>(k - 2)];
            const ComplexMatrix rhs = kron(rk1.mat, ComplexMatrix::identity(t.d));
            report.add("trace_K" + std::to_string(k) + "_chain", max_abs_diff(lhs, rhs), tol);
        }
        report.add("R1_trace_one", std::abs(chain.front().mat.trace() - cplx(1.0, 0.0)), tol);
    }
    return report;
}

PovmForm povm_form(const Tester& t) {
    if (!t.is_parallel()) {
        throw std::invalid_argument("povm_form: tester has no parallel witness");
    }
    const auto& s = t.witness_s().mat;
    if (min_eigenvalue(s) < 1e-10) {
        throw std::invalid_argument("povm_form: witness S is singular");
    }
    const std::size_t block = s.rows();
    const ComplexMatrix sqrt_s = herm_sqrt(s);
    const ComplexMatrix inv_sqrt_s = herm_inv_sqrt(s);
    const ComplexMatrix eye = ComplexMatrix::identity(block);

    PovmForm form;
    form.n_slots = t.n_slots;
    form.d = t.d;
    form.outcomes = t.outcomes;
    form.prep_state = kron(sqrt_s, eye) * grouped_phi(block);

    const ComplexMatrix scaler = kron(inv_sqrt_s, eye);
    const FactorSpace inter = FactorSpace::interleaved(t.n_slots, static_cast<std::size_t>(t.d));
    for (const auto& op : t.operators) {
        const ComplexMatrix grouped =
            permute_factors(op.mat, inter, interleaved_to_grouped_perm(t.n_slots));
        form.effects.push_back(scaler * grouped * scaler);
    }
    return form;
}

std::vector<double> outcome_probabilities(const Tester& t, const LabeledOperator& input) {
    std::vector<double> probs;
    probs.reserve(t.operators.size());
    for (const auto& op : t.operators) {
        if (op.mat.rows() != input.mat.rows()) {
            throw std::invalid_argument("outcome_probabilities: dimension mismatch");
        }
        probs.push_back(hs_inner(op.mat, input.mat).real());
    }
    return probs;
}

}  // namespace ucl
