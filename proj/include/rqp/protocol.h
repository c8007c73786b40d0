#pragma once

#include <optional>
#include <string>

#include "rqp/circuit.h"
#include "rqp/hpath.h"
#include "rqp/rng.h"
#include "rqp/scoring.h"

namespace rqp {

enum class Promise { Yes, No, Unknown };

/// A decision instance: CH circuit plus promised answer. "Accept" means
/// qubit 0 of v|0...0> measures 1, so the acceptance probability is the
/// exact outcome probability of z=1 on the first qubit.
struct DecisionInstance {
    Circuit v;
    Promise promise = Promise::Unknown;
};

/// Exact P[qubit0 = 1] of v|0...0>.
Rational acceptance_prob(const Circuit& v);

/// Throws std::invalid_argument if the promised bound (>= 2/3 for yes,
/// <= 1/3 for no) fails against the exact acceptance probability.
void check_promise(const DecisionInstance& inst);

/// The client's decision coin: a probabilistic bit with
/// Pr[a=1] = 1/2 + 2^-(h+2) · (p_acc - 1/2), built from fair coins only.
/// One fair coin picks between a path-machine run on the z=1 probe circuit
/// (outcome 1 -> a=1, 2 -> a=0, 3 -> fair coin) and a dyadic biased bit
/// realized with h+2 coin flips.
class DecisionSampler {
  public:
    explicit DecisionSampler(const Circuit& v);
    int sample(Rng& rng) const;
    unsigned hadamards() const { return h_; }

  private:
    Circuit probe_;
    unsigned h_;
    uint64_t tails_threshold_;
};

int client_decision_sample(const Circuit& v, Rng& rng);

/// One protocol round, post-payment record. The client's draw (a for
/// protocol 1) stays hidden from the server until the reward is paid;
/// a transcript only exists once payment happened.
struct Transcript {
    int protocol = 0;
    std::optional<int> b;        // protocol 1: server bit
    std::optional<int> a;        // protocol 1: client bit
    std::optional<uint64_t> z;   // protocol 2: sampled outcome
    unsigned k = 0;
    std::optional<int> w;        // protocol 2: machine outcome
    Rational reward;

    std::string str() const;
};

/// Decision protocol round: reward 1 if a = b, else 0.
Transcript run_protocol1(const DecisionInstance& inst, int b, Rng& rng);

/// <$>_b, exactly: <$>_1 = 1/2 + 2^-(h+2)·(p_acc - 1/2), <$>_0 = 1 - <$>_1.
Rational expected_reward_p1(const Circuit& v, int b);

/// Distribution protocol round: uniform z, one machine run on the z probe,
/// reward by the scoring rule. Invalid reports are rejected before any
/// reward.
Transcript run_protocol2(const Circuit& v, unsigned k, const ExactDist& report, Rng& rng);

/// <$> = 2 + 2^-(k+h) · sum_z p_z·S(z, report), exactly.
Rational expected_reward_p2(const Circuit& v, unsigned k, const ExactDist& report);

/// Same value by the other algebraic route: directly averaging the
/// machine's outcome distribution against the reward rule,
/// sum_z 2^-k·[D_z(1)(S+2) + D_z(2)(2-S) + 2·D_z(3)].
Rational expected_reward_p2_direct(const Circuit& v, unsigned k, const ExactDist& report);

/// <$>(truth) - <$>(report) = 2^-(k+h) · sum_z (p_z - report_z)²; zero
/// exactly when report equals the true distribution.
Rational reward_gap(const Circuit& v, unsigned k, const ExactDist& report);

/// Hoeffding audit of an expected reward: empirical mean of T sampled
/// rounds with the server message held fixed, plus the concentration
/// bound 2·exp(-T·eps²/(2M²)) for the reward cap M.
struct AuditResult {
    double eta = 0.0;
    uint64_t rounds = 0;
    double epsilon = 0.0;
    double max_reward = 0.0;
    double hoeffding_bound = 0.0;
    Rational exact;
    bool within_epsilon = false;
};

AuditResult audit_protocol1(const Circuit& v, int b, uint64_t rounds, double epsilon, Rng& rng);
AuditResult audit_protocol2(const Circuit& v, unsigned k, const ExactDist& report, uint64_t rounds,
                            double epsilon, Rng& rng);

}  // namespace rqp
