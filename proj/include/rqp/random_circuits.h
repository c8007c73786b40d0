#pragma once

#include "rqp/circuit.h"
#include "rqp/protocol.h"
#include "rqp/rng.h"
#include "rqp/scoring.h"

namespace rqp {

/// Random CH circuit: `gates` gates over `width` qubits, at most `max_h`
/// of them Hadamards. Used by oracle-equivalence and property suites.
Circuit random_ch_circuit(Rng& rng, unsigned width, unsigned gates, unsigned max_h);

/// Random CT circuit with at most `max_t` T gates.
Circuit random_ct_circuit(Rng& rng, unsigned width, unsigned gates, unsigned max_t);

/// Random exact distribution over k-bit outcomes (16-bit integer weights
/// normalized by their sum, so zero entries do occur).
ExactDist random_exact_distribution(Rng& rng, unsigned k);

/// Rejection-samples CH circuits until the exact acceptance probability
/// clears the promise threshold: >= 2/3 for yes, <= 1/3 for no. Throws
/// std::runtime_error if no instance shows up within the attempt cap.
DecisionInstance random_promise_instance(Rng& rng, unsigned width, bool want_yes);

}  // namespace rqp
