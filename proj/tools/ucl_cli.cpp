// Command-line front end: closed forms, tester construction and
// verification, dual certificates, Monte Carlo simulation, and sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ucl/certificates.hpp"
#include "ucl/channels.hpp"
#include "ucl/sim.hpp"
#include "ucl/symgroup.hpp"
#include "ucl/tester.hpp"

namespace {

using nlohmann::json;

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open output file: " + path);
        }
        out << text;
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("UCL_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::vector<int> parse_n2_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        return {std::stoi(text)};
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) {
        throw CLI::ValidationError("--n2", "range upper bound below lower bound");
    }
    std::vector<int> values;
    for (int v = lo; v <= hi; ++v) values.push_back(v);
    return values;
}

json sim_result_json(const ucl::SimConfig& cfg, const ucl::SimResult& res) {
    json j{{"d", cfg.d},
           {"n1", cfg.n1},
           {"n2", cfg.n2},
           {"p", cfg.p},
           {"samples", res.samples},
           {"seed", cfg.seed},
           {"strategy", ucl::to_string(cfg.strategy)},
           {"estimator", ucl::to_string(cfg.estimator)},
           {"task", ucl::to_string(cfg.task)},
           {"estimate", res.estimate},
           {"std_error", res.std_error}};
    if (res.analytic) j["analytic"] = *res.analytic;
    if (res.z_score) j["z_score"] = *res.z_score;
    return j;
}

std::string sim_result_csv(const ucl::SimResult& res) {
    std::string csv = "estimate,std_error,samples,analytic,z_score\n";
    csv += ucl::fmt_g17(res.estimate) + "," + ucl::fmt_g17(res.std_error) + "," +
           std::to_string(res.samples) + ",";
    if (res.analytic) csv += ucl::fmt_g17(*res.analytic);
    csv += ",";
    if (res.z_score) csv += ucl::fmt_g17(*res.z_score);
    csv += "\n";
    return csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal testers for comparing unknown unitary channels"};
    app.require_subcommand(1);

    int d = 2;
    int n1 = 1;
    std::string n2_text = "1";
    double p = 0.5;
    long long samples = 10000;
    std::optional<std::uint64_t> seed_flag;
    std::string strategy = "tester";
    std::string estimator = "rao_blackwell";
    std::string task = "min_error";
    std::string out_path;
    std::string format = "json";
    double tol = 1e-10;

    auto add_common = [&](CLI::App* cmd, bool with_n2) {
        cmd->add_option("--d", d, "local dimension")->check(CLI::Range(2, 64));
        cmd->add_option("--n1", n1, "uses of the first channel")->check(CLI::Range(1, 8));
        if (with_n2) {
            cmd->add_option("--n2", n2_text, "uses of the second channel (int or a..b)");
        }
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--tol", tol, "verification tolerance");
    };

    auto* gamma_cmd = app.add_subcommand("gamma", "print the comparison figure gamma(n, d)");
    int gamma_n = 1;
    gamma_cmd->add_option("--d", d, "local dimension")->check(CLI::Range(2, 64));
    gamma_cmd->add_option("--n", gamma_n, "number of uses")->check(CLI::Range(1, 16));

    auto* tester_cmd = app.add_subcommand("tester", "build a tester and verify its conditions");
    add_common(tester_cmd, false);
    tester_cmd->add_option("--p", p, "prior probability of the identical case");
    tester_cmd->add_option("--task", task, "min_error or unambiguous")
        ->check(CLI::IsMember({"min_error", "unambiguous"}));

    auto* certify_cmd =
        app.add_subcommand("certify", "build the dual certificate and verify feasibility");
    add_common(certify_cmd, false);
    certify_cmd->add_option("--p", p, "prior probability of the identical case");
    certify_cmd->add_option("--task", task, "min_error or unambiguous")
        ->check(CLI::IsMember({"min_error", "unambiguous"}));

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo protocol simulation");
    add_common(simulate_cmd, true);
    simulate_cmd->add_option("--p", p, "prior probability of the identical case");
    simulate_cmd->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed_flag, "rng seed (falls back to env UCL_SEED)");
    simulate_cmd->add_option("--strategy", strategy,
                             "tester, dagger_circuit, conjugate_circuit, or guess");
    simulate_cmd->add_option("--estimator", estimator, "rao_blackwell or bernoulli");
    simulate_cmd->add_option("--task", task, "min_error or unambiguous")
        ->check(CLI::IsMember({"min_error", "unambiguous"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "closed-form sweep over n2");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--p", p, "prior probability of the identical case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const OutputTarget target{out_path};

        if (gamma_cmd->parsed()) {
            target.write(std::to_string(ucl::gamma_factor(gamma_n, d)));
            return 0;
        }

        if (tester_cmd->parsed()) {
            const ucl::Tester t = task == "unambiguous" ? ucl::build_unambiguous(n1, d)
                                                        : ucl::build_min_error(n1, d, p);
            const ucl::VerificationReport report = ucl::verify_tester(t, tol);
            json j{{"d", d},          {"n1", n1},
                   {"p", p},          {"task", task},
                   {"outcomes", t.outcomes}, {"checks", report.to_json()},
                   {"all_pass", report.all_pass()}};
            if (task == "unambiguous") {
                j["p_inconclusive"] = ucl::unambiguous_primal_value(t, p);
            } else {
                j["p_success"] = ucl::min_error_primal_value(t, p);
            }
            target.write(j.dump(2));
            return report.all_pass() ? 0 : 1;
        }

        if (certify_cmd->parsed()) {
            json j{{"d", d}, {"n1", n1}, {"task", task}};
            bool pass = false;
            if (task == "unambiguous") {
                const auto cert = ucl::build_dual_unambiguous(n1, d);
                const auto report = ucl::verify_dual_unambiguous(cert, n1, d, tol);
                const ucl::Tester t = ucl::build_unambiguous(n1, d);
                const double primal =
                    ucl::outcome_probabilities(t, ucl::m2(n1, d))[t.outcome_index("different")];
                j["lambda"] = cert.lambda;
                j["eta"] = *cert.eta;
                j["primal"] = primal;
                j["checks"] = report.to_json();
                pass = report.all_pass() && std::abs(primal - cert.lambda) <= tol;
            } else {
                const auto cert = ucl::build_dual_min_error(n1, d, p);
                const auto report = ucl::verify_dual_min_error(cert, n1, d, p, tol);
                const double primal =
                    ucl::min_error_primal_value(ucl::build_min_error(n1, d, p), p);
                j["p"] = p;
                j["lambda"] = cert.lambda;
                j["primal"] = primal;
                j["checks"] = report.to_json();
                pass = report.all_pass() && std::abs(primal - cert.lambda) <= tol;
            }
            j["all_pass"] = pass;
            target.write(j.dump(2));
            return pass ? 0 : 1;
        }

        if (simulate_cmd->parsed()) {
            ucl::SimConfig cfg;
            cfg.d = d;
            cfg.n1 = n1;
            const auto n2_values = parse_n2_range(n2_text);
            if (n2_values.size() != 1) {
                std::cerr << "simulate expects a single --n2 value\n";
                return 2;
            }
            cfg.n2 = n2_values.front();
            cfg.p = p;
            cfg.samples = samples;
            cfg.seed = resolve_seed(seed_flag);
            cfg.strategy = ucl::strategy_from_string(strategy);
            cfg.estimator = ucl::estimator_from_string(estimator);
            cfg.task = ucl::task_from_string(task);
            const ucl::SimResult res = ucl::simulate(cfg);
            if (format == "csv") {
                target.write(sim_result_csv(res));
            } else {
                target.write(sim_result_json(cfg, res).dump(2));
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            const auto rows = ucl::sweep(n1, d, p, parse_n2_range(n2_text));
            if (format == "json") {
                json arr = json::array();
                for (const auto& row : rows) {
                    json r{{"n2", row.n2},
                           {"gamma_or_beta", row.beta},
                           {"p_asp_state", row.state}};
                    r["p_asp_unitary"] = row.unitary ? json(*row.unitary) : json(nullptr);
                    arr.push_back(r);
                }
                target.write(arr.dump(2));
            } else {
                target.write(ucl::sweep_to_csv(rows));
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
