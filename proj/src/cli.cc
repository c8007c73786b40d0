#include "rqp/cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqp/acceptance.h"
#include "rqp/hpath.h"
#include "rqp/protocol.h"
#include "rqp/sharpp.h"
#include "rqp/statevector.h"
#include "rqp/strategies.h"
#include "rqp/tpath.h"

namespace rqp::cli {

namespace {

using nlohmann::ordered_json;

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Circuit load_circuit(const std::string& path) {
    try {
        return parse_circuit(load_file(path));
    } catch (const ParseError& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

ExactDist load_distribution(const std::string& path) {
    try {
        return parse_distribution(load_file(path));
    } catch (const ParseError& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

/// Writes the machine-readable report: deterministic bytes for a fixed
/// config and seed.
void emit(const ordered_json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw std::invalid_argument("cannot write '" + out_path + "'");
        }
        out << text;
    }
}

/// Exact value plus its decimal rendering under `key` / `key_decimal`.
void put_exact(ordered_json& j, const std::string& key, const Rational& v) {
    j[key] = to_string(v);
    j[key + "_decimal"] = to_double(v);
}

void put_roottwo(ordered_json& j, const std::string& key, const RootTwoValue& v) {
    j[key] = v.str();
    j[key + "_decimal"] = v.to_double();
}

ordered_json dist_strings(const ExactDist& d) {
    ordered_json arr = ordered_json::array();
    for (const Rational& p : d.probs) {
        arr.push_back(to_string(p));
    }
    return arr;
}

/// Shared flag bundle; each subcommand binds the subset it needs.
struct Opts {
    std::string circuit_path;
    std::string report_path;
    std::string phi_path;
    std::string out_path;
    std::string mode = "exact";
    std::string strategy = "honest-exact";
    std::string server = "honest";
    std::string hpath_mode = "enumerate";
    std::string z_bits;
    unsigned k = 0;
    uint64_t rounds = 0;
    uint64_t seed = 0;
    double eps = 0.01;
    int protocol = 0;
    bool exhaustive3 = false;
    std::vector<int> criteria;
};

int cmd_oracle(const Opts& o) {
    Circuit c = load_circuit(o.circuit_path);
    ordered_json j;
    j["command"] = "oracle";
    j["circuit_hash"] = circuit_hash(c);
    j["width"] = c.width;
    j["z1_expectation"] = z1_expectation(c);
    if (c.gate_set == GateSet::CH) {
        j["amplitude_at_zero"] = amplitude_at_zero(c);
    }
    if (o.k > 0) {
        std::vector<double> marg = marginal_probs(simulate(c), o.k);
        if (o.z_bits.empty()) {
            j["k"] = o.k;
            j["marginal"] = marg;
        } else {
            uint64_t z = parse_outcome_bits(o.z_bits, o.k);
            j["k"] = o.k;
            j["z"] = o.z_bits;
            j["p_z"] = marg[z];
        }
    } else if (!o.z_bits.empty()) {
        throw std::invalid_argument("--z needs --k");
    }
    emit(j, o.out_path);
    std::cerr << "oracle: width " << c.width << ", z1 expectation " << z1_expectation(c) << "\n";
    return 0;
}

int cmd_hpath(const Opts& o) {
    Circuit c = load_circuit(o.circuit_path);
    if (o.k > 0) {
        c = build_w_circuit(c, o.k, parse_outcome_bits(o.z_bits, o.k));
    } else if (!o.z_bits.empty()) {
        throw std::invalid_argument("--z needs --k");
    }
    ordered_json j;
    j["command"] = "hpath";
    j["mode"] = o.hpath_mode;
    j["circuit_hash"] = circuit_hash(c);
    j["h"] = hadamard_count(c);
    if (o.hpath_mode == "enumerate") {
        OutcomeTriple t = enumerate_paths(c);
        j["counts"] = {t.n1.str(), t.n2.str(), t.n3.str()};
        ordered_json d = ordered_json::array();
        ordered_json dd = ordered_json::array();
        for (const Rational& v : {t.d1(), t.d2(), t.d3()}) {
            d.push_back(to_string(v));
            dd.push_back(to_double(v));
        }
        j["d"] = d;
        j["d_decimal"] = dd;
        j["amplitude"] = amplitude_string(t);
        j["amplitude_decimal"] = amplitude_from_triple(t).to_double();
        emit(j, o.out_path);
        std::cerr << "hpath enumerate: D = (" << to_string(t.d1()) << ", " << to_string(t.d2())
                  << ", " << to_string(t.d3()) << "), amplitude " << amplitude_string(t) << "\n";
    } else {
        Rng rng(o.seed);
        uint64_t counts[4] = {0, 0, 0, 0};
        for (uint64_t i = 0; i < o.rounds; ++i) {
            ++counts[sample_run(c, rng)];
        }
        double n = static_cast<double>(o.rounds);
        j["runs"] = o.rounds;
        j["seed"] = o.seed;
        j["counts"] = {counts[1], counts[2], counts[3]};
        j["freq"] = {counts[1] / n, counts[2] / n, counts[3] / n};
        // (sqrt2)^h · (f1 - f2): sampling estimate of the amplitude
        j["amplitude_estimate"] =
            std::pow(std::sqrt(2.0), hadamard_count(c)) * (counts[1] - counts[2]) / n;
        emit(j, o.out_path);
        std::cerr << "hpath sample: freq = (" << counts[1] / n << ", " << counts[2] / n << ", "
                  << counts[3] / n << ") over " << o.rounds << " runs\n";
    }
    return 0;
}

int cmd_tpath(const Opts& o) {
    Circuit c = load_circuit(o.circuit_path);
    RootTwoValue ze = z_expectation(c);
    RootTwoValue pa = acceptance_probability(c);
    ordered_json j;
    j["command"] = "tpath";
    j["circuit_hash"] = circuit_hash(c);
    put_roottwo(j, "z_expectation", ze);
    put_roottwo(j, "p_acc", pa);
    emit(j, o.out_path);
    std::cerr << "tpath: z expectation " << ze.str() << " = " << ze.to_double() << ", p_acc "
              << pa.str() << " = " << pa.to_double() << "\n";
    return 0;
}

int cmd_p1(const Opts& o) {
    Circuit v = load_circuit(o.circuit_path);
    int correct = correct_decision_bit(v);
    int b = o.server == "flip" ? 1 - correct : correct;
    Rational exact = expected_reward_p1(v, b);
    Rational gap = expected_reward_p1(v, correct) - exact;

    DecisionSampler sampler(v);
    Rng rng(o.seed);
    uint64_t hits = 0;
    for (uint64_t i = 0; i < o.rounds; ++i) {
        hits += sampler.sample(rng) == b;
    }

    ordered_json j;
    j["protocol"] = 1;
    j["command"] = "p1";
    j["circuit_hash"] = circuit_hash(v);
    j["server_bit"] = b;
    put_exact(j, "exact_expected_reward", exact);
    j["empirical_mean"] = static_cast<double>(hits) / static_cast<double>(o.rounds);
    j["rounds"] = o.rounds;
    j["seed"] = o.seed;
    put_exact(j, "gap", gap);
    j["strategy"] = o.server;
    emit(j, o.out_path);
    std::cerr << "p1 (" << o.server << "): b=" << b << ", exact <$> = " << to_string(exact)
              << ", empirical " << static_cast<double>(hits) / static_cast<double>(o.rounds)
              << " over " << o.rounds << " rounds\n";
    return 0;
}

int cmd_p2(const Opts& o) {
    Circuit v = load_circuit(o.circuit_path);
    ServerStrategy strat = parse_strategy(o.strategy);
    if (strat.is_decision_only()) {
        throw std::invalid_argument("strategy '" + o.strategy + "' applies to p1, not p2");
    }
    Rng rng(o.seed);
    ExactDist report = make_report(strat, v, o.k, rng);
    Rational exact = expected_reward_p2(v, o.k, report);
    Rational gap = reward_gap(v, o.k, report);

    // Per-outcome probes once; rounds then draw z and run the machine.
    std::vector<Circuit> probes;
    probes.reserve(std::size_t{1} << o.k);
    for (uint64_t z = 0; z < (uint64_t{1} << o.k); ++z) {
        probes.push_back(build_w_circuit(v, o.k, z));
    }
    double mean = 0.0;
    if (o.mode == "float") {
        FloatDist freport = to_float(report);
        double sum = 0.0;
        for (uint64_t i = 0; i < o.rounds; ++i) {
            uint64_t z = rng.draw_bits(o.k);
            sum += reward_for_outcome(sample_run(probes[z], rng), z, freport);
        }
        mean = sum / static_cast<double>(o.rounds);
    } else {
        Rational sum = 0;
        std::vector<Rational> scores = brier_scores_all(report);
        for (uint64_t i = 0; i < o.rounds; ++i) {
            uint64_t z = rng.draw_bits(o.k);
            int w = sample_run(probes[z], rng);
            sum += w == 1 ? scores[z] + 2 : (w == 2 ? 2 - scores[z] : Rational(2));
        }
        mean = to_double(sum / o.rounds);
    }

    ordered_json j;
    j["protocol"] = 2;
    j["command"] = "p2";
    j["circuit_hash"] = circuit_hash(v);
    j["k"] = o.k;
    j["mode"] = o.mode;
    j["report"] = dist_strings(report);
    put_exact(j, "exact_expected_reward", exact);
    j["empirical_mean"] = mean;
    j["rounds"] = o.rounds;
    j["seed"] = o.seed;
    put_exact(j, "gap", gap);
    j["strategy"] = strat.selector;
    emit(j, o.out_path);
    std::cerr << "p2 (" << strat.selector << "): exact <$> = " << to_string(exact)
              << ", empirical " << mean << " over " << o.rounds << " rounds, gap "
              << to_string(gap) << "\n";
    return 0;
}

int cmd_gap(const Opts& o) {
    Circuit v = load_circuit(o.circuit_path);
    ExactDist report = load_distribution(o.report_path);
    if (report.k != o.k) {
        throw std::invalid_argument("report file is over " + std::to_string(report.k) +
                                    " bits, --k says " + std::to_string(o.k));
    }
    ExactDist truth = honest_exact_report(v, o.k);
    Rational gap = reward_gap(v, o.k, report);

    ordered_json j;
    j["protocol"] = 2;
    j["command"] = "gap";
    j["circuit_hash"] = circuit_hash(v);
    j["k"] = o.k;
    j["truth"] = dist_strings(truth);
    j["report"] = dist_strings(report);
    put_exact(j, "truth_expected_reward", expected_reward_p2(v, o.k, truth));
    put_exact(j, "report_expected_reward", expected_reward_p2(v, o.k, report));
    put_exact(j, "gap", gap);
    emit(j, o.out_path);
    std::cerr << "gap: " << to_string(gap) << " = " << to_double(gap) << "\n";
    return 0;
}

int cmd_audit(const Opts& o) {
    Circuit v = load_circuit(o.circuit_path);
    ordered_json j;
    j["command"] = "audit";
    AuditResult r;
    std::string strategy;
    if (o.protocol == 1) {
        int correct = correct_decision_bit(v);
        int b = o.server == "flip" ? 1 - correct : correct;
        Rng rng(o.seed);
        r = audit_protocol1(v, b, o.rounds, o.eps, rng);
        strategy = o.server;
        j["protocol"] = 1;
        j["server_bit"] = b;
    } else {
        ExactDist report;
        if (!o.report_path.empty()) {
            report = load_distribution(o.report_path);
            if (report.k != o.k) {
                throw std::invalid_argument("report width differs from --k");
            }
            strategy = "file:" + o.report_path;
            Rng rng(o.seed);
            r = audit_protocol2(v, o.k, report, o.rounds, o.eps, rng);
        } else {
            ServerStrategy strat = parse_strategy(o.strategy);
            if (strat.is_decision_only()) {
                throw std::invalid_argument("flip has no distribution to audit");
            }
            Rng rng(o.seed);
            report = make_report(strat, v, o.k, rng);
            r = audit_protocol2(v, o.k, report, o.rounds, o.eps, rng);
            strategy = strat.selector;
        }
        j["protocol"] = 2;
        j["k"] = o.k;
        j["report"] = dist_strings(report);
    }
    j["circuit_hash"] = circuit_hash(v);
    j["eta"] = r.eta;
    put_exact(j, "exact_expected_reward", r.exact);
    j["empirical_mean"] = r.eta;
    j["rounds"] = r.rounds;
    j["seed"] = o.seed;
    j["epsilon"] = r.epsilon;
    j["max_reward"] = r.max_reward;
    j["hoeffding_bound"] = r.hoeffding_bound;
    j["within_epsilon"] = r.within_epsilon;
    j["strategy"] = strategy;
    emit(j, o.out_path);
    std::cerr << "audit: eta " << r.eta << " vs exact " << to_string(r.exact) << " (|diff| <= "
              << o.eps << ": " << (r.within_epsilon ? "yes" : "no") << ", bound "
              << r.hoeffding_bound << ")\n";
    return 0;
}

int cmd_sharpp(const Opts& o) {
    ordered_json j;
    j["command"] = "sharpp";
    if (o.exhaustive3) {
        ExhaustiveElicitation r = exhaustive_elicitation_n3();
        j["exhaustive"] = {{"functions", r.functions},
                           {"argmax_unique_at_truth", r.argmax_unique_at_truth},
                           {"count_recovered", r.count_recovered}};
        emit(j, o.out_path);
        std::cerr << "sharpp exhaustive n=3: " << r.functions << " functions, argmax at truth: "
                  << (r.argmax_unique_at_truth ? "yes" : "no") << "\n";
        return 0;
    }
    if (o.phi_path.empty() || o.report_path.empty()) {
        throw std::invalid_argument("sharpp needs --phi and --report (or --exhaustive-n3)");
    }
    BooleanFunction phi = [&] {
        try {
            return parse_truth_table(load_file(o.phi_path));
        } catch (const ParseError& e) {
            throw std::invalid_argument(o.phi_path + ": " + e.what());
        }
    }();
    ExactDist report = load_distribution(o.report_path);
    ExactDist truth = phi_distribution(phi);
    Rational expected = expected_reward_sharpp(phi, report);
    Rational best = expected_reward_sharpp(phi, truth);

    j["n"] = phi.arity();
    j["zero_count"] = phi.zero_count().str();
    j["truth"] = dist_strings(truth);
    j["report"] = dist_strings(report);
    put_exact(j, "exact_expected_reward", expected);
    put_exact(j, "truth_expected_reward", best);
    put_exact(j, "gap", best - expected);
    // Nearest integer of 2^n · report(0): what the client would read back.
    Rational scaled = pow2_int(phi.arity()) * report.probs[0];
    Int recovered = (2 * numerator(scaled) + denominator(scaled)) / (2 * denominator(scaled));
    j["recovered_count"] = recovered.str();
    emit(j, o.out_path);
    std::cerr << "sharpp: zero count " << phi.zero_count().str() << " of 2^" << phi.arity()
              << ", report expects " << to_string(expected) << " (truth " << to_string(best)
              << ")\n";
    return 0;
}

int cmd_verify(const Opts& o) {
    std::vector<int> ids = o.criteria;
    if (ids.empty()) {
        for (int i = 1; i <= acceptance::CRITERION_COUNT; ++i) {
            ids.push_back(i);
        }
    }
    ordered_json results = ordered_json::array();
    bool all = true;
    for (int id : ids) {
        acceptance::CriterionResult r = acceptance::run_criterion(id);
        std::cerr << acceptance::format_line(r) << "\n";
        results.push_back({{"id", r.id},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
        all = all && r.passed;
    }
    ordered_json j;
    j["command"] = "verify";
    j["criteria"] = results;
    j["all_passed"] = all;
    emit(j, o.out_path);
    std::cerr << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("rqp");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"simulator and verifier for scoring-rule delegation protocols"};
    app.require_subcommand(1);
    Opts o;
    int (*handler)(const Opts&) = nullptr;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "write the JSON report here instead of stdout"); };
    auto add_circuit = [&](CLI::App* sub) {
        sub->add_option("--circuit", o.circuit_path, "circuit file")->required();
    };
    auto add_seeded = [&](CLI::App* sub) {
        sub->add_option("--rounds", o.rounds, "number of sampled rounds")
            ->required()
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "RNG seed (sampling is deterministic given it)")
            ->required();
    };

    CLI::App* oracle = app.add_subcommand("oracle", "statevector ground truth for a circuit");
    add_circuit(oracle);
    oracle->add_option("--k", o.k, "emit the marginal over the first k qubits");
    oracle->add_option("--z", o.z_bits, "single outcome (bit string, qubit 0 first)");
    add_out(oracle);
    oracle->callback([&] { handler = cmd_oracle; });

    CLI::App* hpath = app.add_subcommand("hpath", "coin-flip path machine: sample or enumerate");
    add_circuit(hpath);
    hpath->add_option("--mode", o.hpath_mode, "sample | enumerate")
        ->check(CLI::IsMember({"sample", "enumerate"}));
    hpath->add_option("--runs", o.rounds, "samples in sample mode")->check(CLI::PositiveNumber);
    CLI::Option* hseed = hpath->add_option("--seed", o.seed, "RNG seed (sample mode)");
    hpath->add_option("--k", o.k, "wrap the circuit into its outcome probe first");
    hpath->add_option("--z", o.z_bits, "probe outcome (bit string, with --k)");
    add_out(hpath);
    hpath->callback([&] {
        if (o.hpath_mode == "sample") {
            if (hseed->count() == 0) {
                throw CLI::ValidationError("hpath", "--seed is required in sample mode");
            }
            if (o.rounds == 0) {
                o.rounds = 10000;
            }
        }
        handler = cmd_hpath;
    });

    CLI::App* tpath = app.add_subcommand("tpath", "exact Pauli-path expectation for CT circuits");
    add_circuit(tpath);
    add_out(tpath);
    tpath->callback([&] { handler = cmd_tpath; });

    CLI::App* p1 = app.add_subcommand("p1", "decision protocol rounds");
    add_circuit(p1);
    p1->add_option("--server", o.server, "honest | flip")
        ->check(CLI::IsMember({"honest", "flip"}));
    add_seeded(p1);
    add_out(p1);
    p1->callback([&] { handler = cmd_p1; });

    CLI::App* p2 = app.add_subcommand("p2", "distribution protocol rounds");
    add_circuit(p2);
    p2->add_option("--k", o.k, "reported outcome width")->required()->check(CLI::PositiveNumber);
    p2->add_option("--strategy", o.strategy,
                   "honest-exact | honest-sampling:eps=..,delta=.. | uniform | point:z=.. | "
                   "shift:z=..,amt=..");
    p2->add_option("--mode", o.mode, "exact | float scoring of sampled rounds")
        ->check(CLI::IsMember({"exact", "float"}));
    add_seeded(p2);
    add_out(p2);
    p2->callback([&] { handler = cmd_p2; });

    CLI::App* gap = app.add_subcommand("gap", "exact reward gap of a reported distribution");
    add_circuit(gap);
    gap->add_option("--k", o.k, "reported outcome width")->required()->check(CLI::PositiveNumber);
    gap->add_option("--report", o.report_path, "distribution file")->required();
    add_out(gap);
    gap->callback([&] { handler = cmd_gap; });

    CLI::App* audit = app.add_subcommand("audit", "Hoeffding estimate of an expected reward");
    add_circuit(audit);
    audit->add_option("--protocol", o.protocol, "1 | 2")->required()->check(CLI::Range(1, 2));
    audit->add_option("--server", o.server, "protocol 1: honest | flip")
        ->check(CLI::IsMember({"honest", "flip"}));
    audit->add_option("--k", o.k, "protocol 2: outcome width");
    audit->add_option("--strategy", o.strategy, "protocol 2: report strategy");
    audit->add_option("--report", o.report_path, "protocol 2: report file (overrides --strategy)");
    audit->add_option("--eps", o.eps, "target precision")->check(CLI::PositiveNumber);
    add_seeded(audit);
    add_out(audit);
    audit->callback([&] {
        if (o.protocol == 2 && o.k == 0) {
            throw CLI::ValidationError("audit", "--k is required for protocol 2");
        }
        handler = cmd_audit;
    });

    CLI::App* sharpp = app.add_subcommand("sharpp", "counting elicitation analysis");
    sharpp->add_option("--phi", o.phi_path, "truth-table file (one bit per line)");
    sharpp->add_option("--report", o.report_path, "binary report distribution file");
    sharpp->add_flag("--exhaustive-n3", o.exhaustive3,
                     "scan all 256 3-bit functions for the argmax property");
    add_out(sharpp);
    sharpp->callback([&] { handler = cmd_sharpp; });

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--criteria", o.criteria, "criterion ids (default: all)")
        ->check(CLI::Range(1, acceptance::CRITERION_COUNT));
    add_out(verify);
    verify->callback([&] { handler = cmd_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return handler(o);
    } catch (const BudgetError& e) {
        std::cerr << "error: enumeration budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rqp::cli
