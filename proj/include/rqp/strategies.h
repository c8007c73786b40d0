#pragma once

#include <cstdint>
#include <string>

#include "rqp/circuit.h"
#include "rqp/rng.h"
#include "rqp/scoring.h"

namespace rqp {

enum class StrategyTag {
    HonestExact,     // report the exact output distribution
    HonestSampling,  // estimate it from measurement samples (eps, delta)
    Flip,            // decision protocol only: send the wrong bit
    UniformReport,   // uniform over 2^k outcomes
    PointMass,       // all mass on one outcome
    Shifted,         // truth with `amount` of mass moved onto one outcome
};

/// A server behavior plus its parameters. `zstar_bits` is kept as a bit
/// string because its width is only known once k is fixed.
struct ServerStrategy {
    StrategyTag tag = StrategyTag::HonestExact;
    double eps = 0.0;
    double delta = 0.0;
    std::string zstar_bits;
    Rational amount = 0;
    std::string selector;  // canonical text form, echoed in reports

    bool is_decision_only() const { return tag == StrategyTag::Flip; }
};

/// Parses a selector string: honest-exact | honest-sampling:eps=..,delta=..
/// | flip | uniform | point:z=<bits> | shift:z=<bits>,amt=<rational>.
ServerStrategy parse_strategy(const std::string& selector);

/// Exact output distribution of the first k qubits of v|0...0>, via path
/// enumeration (dyadic rationals, no float round-off).
ExactDist honest_exact_report(const Circuit& v, unsigned k);

/// Honest server without an exact simulator: for each z it measures the
/// first k qubits of v|0...0> in T = ceil(ln(2·2^k/delta)/(2·eps²)) fresh
/// shots, takes eta_z = (hits of z)/T, and reports eta_z / sum(eta).
/// Requires 2^k·eps <= 1/2 so the normalization keeps the error within
/// 5·2^k·eps (with probability >= 1-delta). Throws if every eta_z is 0.
ExactDist honest_sampling_report(const Circuit& v, unsigned k, double eps, double delta, Rng& rng);

/// Number of shots per outcome used by honest_sampling_report.
uint64_t sampling_shots(unsigned k, double eps, double delta);

/// The reward-maximizing decision bit: 1 when the acceptance probability
/// exceeds 1/2, else 0 (either maximizes at exactly 1/2; 1 is returned).
int correct_decision_bit(const Circuit& v);

/// Builds the strategy's report for the distribution protocol. Flip has
/// no report and is rejected; use correct_decision_bit for the decision
/// protocol instead.
ExactDist make_report(const ServerStrategy& s, const Circuit& v, unsigned k, Rng& rng);

}  // namespace rqp
