#include "ucl/sim.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <stdexcept>

#include "ucl/certificates.hpp"
#include "ucl/channels.hpp"
#include "ucl/symgroup.hpp"

namespace ucl {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::tester: return "tester";
        case Strategy::dagger_circuit: return "dagger_circuit";
        case Strategy::conjugate_circuit: return "conjugate_circuit";
        case Strategy::guess: return "guess";
    }
    return "?";
}

std::string to_string(Estimator e) {
    return e == Estimator::rao_blackwell ? "rao_blackwell" : "bernoulli";
}

std::string to_string(Task t) {
    return t == Task::min_error ? "min_error" : "unambiguous";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "tester") return Strategy::tester;
    if (s == "dagger_circuit") return Strategy::dagger_circuit;
    if (s == "conjugate_circuit") return Strategy::conjugate_circuit;
    if (s == "guess") return Strategy::guess;
    throw std::invalid_argument("unknown strategy: " + s);
}

Estimator estimator_from_string(const std::string& s) {
    if (s == "rao_blackwell") return Estimator::rao_blackwell;
    if (s == "bernoulli") return Estimator::bernoulli;
    throw std::invalid_argument("unknown estimator: " + s);
}

Task task_from_string(const std::string& s) {
    if (s == "min_error") return Task::min_error;
    if (s == "unambiguous") return Task::unambiguous;
    throw std::invalid_argument("unknown task: " + s);
}

namespace {

constexpr int kWorkerStreams = 16;

ComplexMatrix kron_power(const ComplexMatrix& u, int n) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int i = 0; i < n; ++i) out = kron(out, u);
    return out;
}

LabeledOperator choi_power(const ComplexMatrix& v, int n) {
    const LabeledOperator c = choi(v, 1, 1e-8);
    ComplexMatrix mat = ComplexMatrix::identity(1);
    std::vector<Factor> factors;
    const std::size_t d = v.rows();
    for (int k = 1; k <= n; ++k) {
        mat = kron(mat, c.mat);
        factors.push_back({{FactorKind::K, k}, d});
        factors.push_back({{FactorKind::H, k}, d});
    }
    return {std::move(mat), FactorSpace(std::move(factors))};
}

// Reshape a grouped vector on K (x) H into a block x block matrix, apply
// A . Psi . B^T, flatten back. Equals kron(A, B) |psi>.
ComplexMatrix apply_kron_to_vector(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const ComplexMatrix& psi) {
    const std::size_t block = a.rows();
    ComplexMatrix m(block, block);
    for (std::size_t i = 0; i < block; ++i) {
        for (std::size_t j = 0; j < block; ++j) {
            m(i, j) = psi(i * block + j, 0);
        }
    }
    const ComplexMatrix res = a * m * b.transpose();
    ComplexMatrix out(block * block, 1);
    for (std::size_t i = 0; i < block; ++i) {
        for (std::size_t j = 0; j < block; ++j) {
            out(i * block + j, 0) = res(i, j);
        }
    }
    return out;
}

// Everything fixed across samples for one protocol configuration.
struct Protocol {
    SimConfig cfg;
    Tester tester;
    PovmForm povm;  // circuits only

    std::vector<double> probs(const ComplexMatrix& u1, const ComplexMatrix& u2) const {
        switch (cfg.strategy) {
            case Strategy::tester: {
                const ComplexMatrix v = u1 * u2.adjoint();
                return outcome_probabilities(tester, choi_power(v, cfg.n1));
            }
            case Strategy::dagger_circuit: {
                const ComplexMatrix w = kron_power(u1 * u2.adjoint(), cfg.n1);
                const ComplexMatrix eye = ComplexMatrix::identity(w.rows());
                return povm_probs(apply_kron_to_vector(eye, w, povm.prep_state));
            }
            case Strategy::conjugate_circuit: {
                const ComplexMatrix a = kron_power(u2.conjugate(), cfg.n1);
                const ComplexMatrix b = kron_power(u1, cfg.n1);
                return povm_probs(apply_kron_to_vector(a, b, povm.prep_state));
            }
            case Strategy::guess:
                break;
        }
        throw std::logic_error("probs: guess strategy has no measurement");
    }

    std::vector<double> povm_probs(const ComplexMatrix& out_state) const {
        std::vector<double> probs;
        probs.reserve(povm.effects.size());
        for (const auto& effect : povm.effects) {
            const ComplexMatrix ev = effect * out_state;
            cplx acc(0.0, 0.0);
            for (std::size_t i = 0; i < ev.rows(); ++i) {
                acc += std::conj(out_state(i, 0)) * ev(i, 0);
            }
            probs.push_back(acc.real());
        }
        return probs;
    }
};

struct BlockSums {
    double sum = 0.0;
    double sumsq = 0.0;
    long long count = 0;
};

BlockSums run_block(const Protocol& proto, std::uint64_t stream_id, long long count) {
    const SimConfig& cfg = proto.cfg;
    RngStream rng(cfg.seed, stream_id);
    BlockSums sums;
    sums.count = count;

    const bool unamb = cfg.task == Task::unambiguous;
    std::size_t idx_case1 = 0, idx_case2 = 0;
    if (cfg.strategy != Strategy::guess) {
        idx_case1 = proto.tester.outcome_index(unamb ? "inconclusive" : "same");
        idx_case2 = proto.tester.outcome_index(unamb ? "inconclusive" : "different");
    }

    for (long long s = 0; s < count; ++s) {
        double y = 0.0;
        if (cfg.strategy == Strategy::guess) {
            // Always answer "different" (min-error) or "inconclusive"
            // (unambiguous); no channel uses, no randomness.
            if (cfg.estimator == Estimator::rao_blackwell) {
                y = unamb ? 1.0 : 1.0 - cfg.p;
            } else {
                const bool case1 = rng.uniform() < cfg.p;
                y = unamb ? 1.0 : (case1 ? 0.0 : 1.0);
            }
        } else if (cfg.estimator == Estimator::rao_blackwell) {
            const ComplexMatrix uc = haar_unitary(cfg.d, rng);
            const ComplexMatrix u1 = haar_unitary(cfg.d, rng);
            const ComplexMatrix u2 = haar_unitary(cfg.d, rng);
            const double q1 = proto.probs(uc, uc)[idx_case1];
            const double q2 = proto.probs(u1, u2)[idx_case2];
            y = cfg.p * q1 + (1.0 - cfg.p) * q2;
        } else {
            const bool case1 = rng.uniform() < cfg.p;
            std::vector<double> probs;
            if (case1) {
                const ComplexMatrix uc = haar_unitary(cfg.d, rng);
                probs = proto.probs(uc, uc);
            } else {
                const ComplexMatrix u1 = haar_unitary(cfg.d, rng);
                const ComplexMatrix u2 = haar_unitary(cfg.d, rng);
                probs = proto.probs(u1, u2);
            }
            // Inverse-CDF outcome draw; clamp away numerical dust.
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t outcome = probs.size() - 1;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                acc += std::max(0.0, probs[i]);
                if (u < acc) {
                    outcome = i;
                    break;
                }
            }
            if (unamb) {
                y = (outcome == proto.tester.outcome_index("inconclusive")) ? 1.0 : 0.0;
            } else {
                const std::size_t want = case1 ? proto.tester.outcome_index("same")
                                               : proto.tester.outcome_index("different");
                y = (outcome == want) ? 1.0 : 0.0;
            }
        }
        sums.sum += y;
        sums.sumsq += y * y;
    }
    return sums;
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
    if (cfg.samples < 1) {
        throw std::invalid_argument("simulate: samples must be >= 1");
    }
    if (cfg.p < 0.0 || cfg.p > 1.0) {
        throw std::invalid_argument("simulate: p must lie in [0, 1]");
    }
    if (cfg.d < 2 || cfg.n1 < 1) {
        throw std::invalid_argument("simulate: need d >= 2 and n1 >= 1");
    }
    if (cfg.strategy != Strategy::guess && cfg.n2 < (cfg.d - 1) * cfg.n1) {
        throw std::invalid_argument(
            "simulate: strategy needs n2 >= (d-1)*n1 uses of the second channel");
    }

    Protocol proto;
    proto.cfg = cfg;
    if (cfg.strategy != Strategy::guess) {
        proto.tester = cfg.task == Task::unambiguous ? build_unambiguous(cfg.n1, cfg.d)
                                                     : build_min_error(cfg.n1, cfg.d, cfg.p);
        if (cfg.strategy != Strategy::tester) {
            proto.povm = povm_form(proto.tester);
        }
    } else if (cfg.estimator == Estimator::rao_blackwell) {
        // The guess strategy uses no channels and no randomness: the
        // conditional value is the same constant in every sample.
        SimResult res;
        res.samples = cfg.samples;
        res.estimate = cfg.task == Task::unambiguous ? 1.0 : 1.0 - cfg.p;
        res.std_error = 0.0;
        res.analytic = res.estimate;
        res.z_score = 0.0;
        return res;
    }

    const int blocks = static_cast<int>(std::min<long long>(kWorkerStreams, cfg.samples));
    const long long base = cfg.samples / blocks;
    const long long rem = cfg.samples % blocks;

    std::vector<std::future<BlockSums>> futures;
    futures.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        const long long count = base + (b < rem ? 1 : 0);
        futures.push_back(std::async(std::launch::async, run_block, std::cref(proto),
                                     static_cast<std::uint64_t>(b), count));
    }

    double sum = 0.0, sumsq = 0.0;
    long long total = 0;
    for (auto& f : futures) {  // worker-index order keeps the merge deterministic
        const BlockSums s = f.get();
        sum += s.sum;
        sumsq += s.sumsq;
        total += s.count;
    }

    SimResult res;
    res.samples = total;
    res.estimate = sum / static_cast<double>(total);
    if (total > 1) {
        const double var =
            std::max(0.0, (sumsq - static_cast<double>(total) * res.estimate * res.estimate) /
                              static_cast<double>(total - 1));
        res.std_error = std::sqrt(var / static_cast<double>(total));
    }

    switch (cfg.task) {
        case Task::min_error:
            res.analytic = (cfg.strategy == Strategy::guess)
                               ? 1.0 - cfg.p
                               : pasp_unitary(cfg.n1, cfg.n2, cfg.d, cfg.p).value;
            break;
        case Task::unambiguous:
            res.analytic = (cfg.strategy == Strategy::guess)
                               ? 1.0
                               : p_inconclusive(cfg.n1, cfg.d, cfg.p).value;
            break;
    }
    if (res.analytic) {
        const double delta = res.estimate - *res.analytic;
        if (res.std_error > 0.0) {
            res.z_score = delta / res.std_error;
        } else {
            res.z_score = (std::abs(delta) <= 1e-12)
                              ? 0.0
                              : std::copysign(std::numeric_limits<double>::infinity(), delta);
        }
    }
    return res;
}

std::pair<double, double> circuit_outcome_probs(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                                int n1, CircuitForm form) {
    if (u1.rows() != u2.rows() || !u1.is_square() || !u2.is_square()) {
        throw std::invalid_argument("circuit_outcome_probs: dimension mismatch");
    }
    Protocol proto;
    proto.cfg.d = static_cast<int>(u1.rows());
    proto.cfg.n1 = n1;
    proto.cfg.n2 = (proto.cfg.d - 1) * n1;
    proto.cfg.strategy =
        form == CircuitForm::dagger ? Strategy::dagger_circuit : Strategy::conjugate_circuit;
    // The measurement operators are p-independent; any p above the threshold
    // selects the non-trivial branch, and the threshold never reaches 1.
    proto.tester = build_min_error(n1, proto.cfg.d, 1.0);
    proto.povm = povm_form(proto.tester);
    const auto probs = proto.probs(u1, u2);
    return {probs[proto.tester.outcome_index("same")],
            probs[proto.tester.outcome_index("different")]};
}

std::vector<SweepRow> sweep(int n1, int d, double p, const std::vector<int>& n2_range) {
    if (n2_range.empty()) {
        throw std::invalid_argument("sweep: empty n2 range");
    }
    std::vector<SweepRow> rows;
    rows.reserve(n2_range.size());
    for (int n2 : n2_range) {
        SweepRow row;
        row.n2 = n2;
        row.beta = beta_factor(n1, n2, d);
        if (n2 >= (d - 1) * n1) {
            row.unitary = pasp_unitary(n1, n2, d, p).value;
        }
        row.state = pasp_state(n1, n2, d, p).value;
        rows.push_back(row);
    }
    return rows;
}

std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string csv = "n2,gamma_or_beta,p_asp_unitary,p_asp_state\n";
    for (const auto& row : rows) {
        csv += std::to_string(row.n2);
        csv += ",";
        csv += fmt_g17(row.beta);
        csv += ",";
        if (row.unitary) csv += fmt_g17(*row.unitary);
        csv += ",";
        csv += fmt_g17(row.state);
        csv += "\n";
    }
    return csv;
}

}  // namespace ucl
