#include "rqp/protocol.h"

#include <cmath>
#include <sstream>

namespace rqp {

Rational acceptance_prob(const Circuit& v) {
    return outcome_probability(v, 1, 1);
}

void check_promise(const DecisionInstance& inst) {
    if (inst.promise == Promise::Unknown) {
        return;
    }
    Rational p = acceptance_prob(inst.v);
    if (inst.promise == Promise::Yes && p < Rational(2, 3)) {
        throw std::invalid_argument("yes-instance has acceptance probability " + to_string(p) +
                                    " < 2/3");
    }
    if (inst.promise == Promise::No && p > Rational(1, 3)) {
        throw std::invalid_argument("no-instance has acceptance probability " + to_string(p) +
                                    " > 1/3");
    }
}

DecisionSampler::DecisionSampler(const Circuit& v)
    : probe_(build_w_circuit(v, 1, 1)), h_(hadamard_count(v)) {
    if (h_ > 60) {
        throw std::invalid_argument("decision sampler coin budget caps h at 60");
    }
    tails_threshold_ = (uint64_t{1} << (h_ + 1)) - 1;
}

int DecisionSampler::sample(Rng& rng) const {
    if (rng.coin()) {
        switch (sample_run(probe_, rng)) {
            case 1: return 1;
            case 2: return 0;
            default: return rng.coin() ? 1 : 0;
        }
    }
    // Dyadic bias: a=1 with probability (2^(h+1) - 1) / 2^(h+2).
    return rng.draw_bits(h_ + 2) < tails_threshold_ ? 1 : 0;
}

int client_decision_sample(const Circuit& v, Rng& rng) {
    return DecisionSampler(v).sample(rng);
}

std::string Transcript::str() const {
    std::ostringstream out;
    out << "protocol=" << protocol;
    if (b) {
        out << " b=" << *b;
    }
    if (a) {
        out << " a=" << *a;
    }
    if (z) {
        out << " z=" << outcome_bits(*z, k);
    }
    if (w) {
        out << " w=" << *w;
    }
    out << " reward=" << to_string(reward);
    return out.str();
}

Transcript run_protocol1(const DecisionInstance& inst, int b, Rng& rng) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument("server bit must be 0 or 1");
    }
    Transcript t;
    t.protocol = 1;
    t.b = b;
    t.a = client_decision_sample(inst.v, rng);
    t.reward = (*t.a == b) ? 1 : 0;
    return t;
}

Rational expected_reward_p1(const Circuit& v, int b) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument("server bit must be 0 or 1");
    }
    unsigned h = hadamard_count(v);
    Rational p_acc = acceptance_prob(v);
    Rational r1 = Rational(1, 2) + (p_acc - Rational(1, 2)) * pow2_inv(h + 2);
    return b == 1 ? r1 : 1 - r1;
}

Transcript run_protocol2(const Circuit& v, unsigned k, const ExactDist& report, Rng& rng) {
    report.validate();
    if (report.k != k) {
        throw std::invalid_argument("report width differs from requested k");
    }
    Transcript t;
    t.protocol = 2;
    t.k = k;
    t.z = rng.draw_bits(k);
    t.w = sample_run(build_w_circuit(v, k, *t.z), rng);
    t.reward = reward_for_outcome(*t.w, *t.z, report);
    return t;
}

Rational expected_reward_p2(const Circuit& v, unsigned k, const ExactDist& report) {
    report.validate();
    if (report.k != k) {
        throw std::invalid_argument("report width differs from requested k");
    }
    unsigned h = hadamard_count(v);
    ExactDist truth = exact_output_distribution(v, k);
    std::vector<Rational> scores = brier_scores_all(report);
    Rational sum = 0;
    for (std::size_t z = 0; z < truth.size(); ++z) {
        sum += truth.probs[z] * scores[z];
    }
    return 2 + sum * pow2_inv(k + h);
}

Rational expected_reward_p2_direct(const Circuit& v, unsigned k, const ExactDist& report) {
    report.validate();
    if (report.k != k) {
        throw std::invalid_argument("report width differs from requested k");
    }
    std::vector<Rational> scores = brier_scores_all(report);
    Rational sum = 0;
    for (uint64_t z = 0; z < (uint64_t{1} << k); ++z) {
        OutcomeTriple o = enumerate_paths(build_w_circuit(v, k, z));
        sum += o.d1() * (scores[z] + 2) + o.d2() * (2 - scores[z]) + o.d3() * 2;
    }
    return sum * pow2_inv(k);
}

Rational reward_gap(const Circuit& v, unsigned k, const ExactDist& report) {
    report.validate();
    if (report.k != k) {
        throw std::invalid_argument("report width differs from requested k");
    }
    unsigned h = hadamard_count(v);
    ExactDist truth = exact_output_distribution(v, k);
    Rational squares = 0;
    for (std::size_t z = 0; z < truth.size(); ++z) {
        Rational diff = truth.probs[z] - report.probs[z];
        squares += diff * diff;
    }
    return squares * pow2_inv(k + h);
}

namespace {

AuditResult finish_audit(Rational mean, Rational exact, uint64_t rounds, double epsilon,
                         double max_reward) {
    AuditResult r;
    r.rounds = rounds;
    r.epsilon = epsilon;
    r.max_reward = max_reward;
    r.exact = std::move(exact);
    r.eta = to_double(mean);
    if (rounds == 0) {
        // Degenerate audit: exhaustive expectation instead of sampling.
        r.eta = to_double(r.exact);
        r.hoeffding_bound = 0.0;
        r.within_epsilon = true;
        return r;
    }
    double t = static_cast<double>(rounds);
    r.hoeffding_bound = 2.0 * std::exp(-t * epsilon * epsilon / (2.0 * max_reward * max_reward));
    r.within_epsilon = to_double(abs(mean - r.exact)) <= epsilon;
    return r;
}

}  // namespace

AuditResult audit_protocol1(const Circuit& v, int b, uint64_t rounds, double epsilon, Rng& rng) {
    Rational exact = expected_reward_p1(v, b);
    if (rounds == 0) {
        return finish_audit(exact, exact, 0, epsilon, 1.0);
    }
    DecisionSampler sampler(v);
    uint64_t hits = 0;
    for (uint64_t i = 0; i < rounds; ++i) {
        hits += sampler.sample(rng) == b;
    }
    return finish_audit(Rational(hits, rounds), exact, rounds, epsilon, 1.0);
}

AuditResult audit_protocol2(const Circuit& v, unsigned k, const ExactDist& report, uint64_t rounds,
                            double epsilon, Rng& rng) {
    Rational exact = expected_reward_p2(v, k, report);
    if (rounds == 0) {
        return finish_audit(exact, exact, 0, epsilon, 4.0);
    }
    // Probe circuits and per-outcome rewards precomputed once per session.
    std::vector<Circuit> probes;
    probes.reserve(std::size_t{1} << k);
    for (uint64_t z = 0; z < (uint64_t{1} << k); ++z) {
        probes.push_back(build_w_circuit(v, k, z));
    }
    std::vector<Rational> scores = brier_scores_all(report);
    Rational total = 0;
    for (uint64_t i = 0; i < rounds; ++i) {
        uint64_t z = rng.draw_bits(k);
        int w = sample_run(probes[z], rng);
        total += w == 1 ? scores[z] + 2 : (w == 2 ? 2 - scores[z] : Rational(2));
    }
    return finish_audit(total / rounds, exact, rounds, epsilon, 4.0);
}

}  // namespace rqp
