#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucl/matrix.hpp"
#include "ucl/tester.hpp"

namespace ucl {

enum class Strategy { tester, dagger_circuit, conjugate_circuit, guess };
enum class Estimator { rao_blackwell, bernoulli };
enum class Task { min_error, unambiguous };

std::string to_string(Strategy s);
std::string to_string(Estimator e);
std::string to_string(Task t);
Strategy strategy_from_string(const std::string& s);
Estimator estimator_from_string(const std::string& s);
Task task_from_string(const std::string& s);

struct SimConfig {
    int d = 2;
    int n1 = 1;
    int n2 = 1;
    double p = 0.5;
    long long samples = 10000;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::tester;
    Estimator estimator = Estimator::rao_blackwell;
    Task task = Task::min_error;
};

struct SimResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    std::optional<double> analytic;
    std::optional<double> z_score;
};

/// Monte Carlo estimate of the figure of merit (average success probability
/// for min_error, inconclusive probability for unambiguous). The
/// rao_blackwell estimator averages exact conditional probabilities per
/// sampled unitary draw; bernoulli draws outcomes. Both are unbiased.
/// Samples are partitioned across fixed worker streams (stream_id = worker
/// index) and partial sums merged in worker order, so results are
/// bit-identical for a given (seed, config) regardless of thread count.
SimResult simulate(const SimConfig& cfg);

enum class CircuitForm { dagger, conjugate };

/// Outcome probabilities (same, different) of the optimal min-error
/// measurement in circuit form: the dagger form applies (u1 u2^dagger) to
/// every output leg of the prepared state; the conjugate form applies u1 on
/// the output legs and u2 conjugated entrywise on the input legs. The two
/// distributions coincide.
std::pair<double, double> circuit_outcome_probs(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                                int n1, CircuitForm form);

struct SweepRow {
    int n2 = 0;
    double beta = 0.0;                  // state-comparison figure for this row
    std::optional<double> unitary;      // blank outside n2 >= (d-1)*n1
    double state = 0.0;
};

/// Closed-form sweep over n2 at fixed (n1, d, p): the unitary column is
/// constant on its validity region, the state column increases with n2.
std::vector<SweepRow> sweep(int n1, int d, double p, const std::vector<int>& n2_range);

/// CSV with header n2,gamma_or_beta,p_asp_unitary,p_asp_state; full double
/// precision, blank cells outside the validity region, LF line endings.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// 17-significant-digit decimal rendering used for all CSV output.
std::string fmt_g17(double v);

}  // namespace ucl
