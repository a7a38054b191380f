#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ucl/channels.hpp"
#include "ucl/matrix.hpp"
#include "ucl/report.hpp"
#include "ucl/tensor.hpp"

namespace ucl {

/// Normalization witness of a parallel tester: sum of the outcome operators
/// equals S (x) I with Tr S = 1.
struct ParallelWitness {
    LabeledOperator s;  // on K1..Kn
};

/// Normalization chain of a general tester: R_k acts on K1,H1,...,K_k and
/// the chain of partial-trace conditions links them down to Tr R_1 = 1.
struct ChainWitness {
    std::vector<LabeledOperator> r;  // r[k-1] = R_k
};

/// Outcome-labelled operator set with its normalization witness. Operators
/// are stored in the interleaved K1,H1,...,Kn,Hn layout.
struct Tester {
    int n_slots = 0;
    int d = 0;
    std::vector<std::string> outcomes;
    std::vector<LabeledOperator> operators;
    std::variant<ParallelWitness, ChainWitness> normalization;

    bool is_parallel() const { return std::holds_alternative<ParallelWitness>(normalization); }
    const LabeledOperator& witness_s() const { return std::get<ParallelWitness>(normalization).s; }
    std::size_t outcome_index(const std::string& name) const;
};

/// Preparation-measurement form of a parallel tester: a normalized state and
/// a POVM, both in the grouped K1..Kn,H1..Hn layout.
struct PovmForm {
    int n_slots = 0;
    int d = 0;
    std::vector<std::string> outcomes;
    std::vector<ComplexMatrix> effects;  // sum to the identity
    ComplexMatrix prep_state;            // column vector, unit norm
};

/// The sector-weighted seed operator of the optimal testers:
/// S = sum_J q_J P_J / (dim_u dim_v) on the inputs block; unit trace, full
/// rank, commutes with every U^{tensor n1}.
LabeledOperator build_S(int n1, int d);

/// Optimal two-outcome comparison tester ("same"/"different"). Above the
/// threshold p = 1/(1+gamma) the tester with Pi_same = (S (x) I)|Phi+><Phi+|
/// (S (x) I) is returned; at or below it, the trivial always-"different"
/// tester.
Tester build_min_error(int n1, int d, double p);

/// Three-outcome unambiguous tester ("same"/"different"/"inconclusive") with
/// Pi_same = 0: wrong conclusive answers are impossible.
Tester build_unambiguous(int n1, int d);

/// Checks positivity and normalization of a tester (parallel or chain
/// conditions). Failures are report entries, never exceptions.
VerificationReport verify_tester(const Tester& t, double tol = 1e-10);

/// Rewrites a full-rank parallel tester as prepare-evolve-measure.
PovmForm povm_form(const Tester& t);

/// Outcome probabilities Tr(Pi_i M) for an input Choi operator M on the same
/// interleaved layout.
std::vector<double> outcome_probabilities(const Tester& t, const LabeledOperator& input);

}  // namespace ucl
