#pragma once

#include "rqp/circuit.h"
#include "rqp/exact.h"
#include "rqp/rng.h"
#include "rqp/roottwo.h"
#include "rqp/scoring.h"

namespace rqp {

/// Register of the coin-flip path machine for CH circuits: the classical
/// bit string plus one phase-tracking bit c.
struct PathRegister {
    uint64_t bits = 0;
    bool c = false;

    bool operator==(const PathRegister&) const = default;
};

enum class Coin { None, Heads, Tails };

/// Exact outcome census of the machine: n1 + n2 + n3 = 2^h paths, where h
/// is the Hadamard count of the simulated circuit. D(w) = n_w / 2^h.
struct OutcomeTriple {
    Int n1 = 0;  // paths ending in (all-zero, c=0)
    Int n2 = 0;  // paths ending in (all-zero, c=1)
    Int n3 = 0;  // everything else
    unsigned h = 0;

    Rational d1() const { return Rational(n1, pow2_int(h)); }
    Rational d2() const { return Rational(n2, pow2_int(h)); }
    Rational d3() const { return Rational(n3, pow2_int(h)); }
};

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t FRONTIER_MAX = std::size_t{1} << 22;

/// One machine step. Classical gates permute the bits and need coin=None;
/// H on bit j needs a coin: heads clears bit j, tails sets it and xors the
/// pre-update bit value into c.
PathRegister apply_step(const PathRegister& r, const Gate& g, Coin coin);

/// (all-zero, 0) -> 1, (all-zero, 1) -> 2, otherwise 3.
int classify(const PathRegister& r);

/// One full pass with fair coins at every H. CH circuits only.
int sample_run(const Circuit& c, Rng& rng);

/// Exact census of all 2^h coin paths via frontier evolution with merging
/// of identical register states. Throws BudgetError if the frontier would
/// exceed max_frontier.
OutcomeTriple enumerate_paths(const Circuit& c, std::size_t max_frontier = FRONTIER_MAX);

/// (n1 - n2) / sqrt(2)^h: the amplitude <0...0|c|0...0> of the simulated
/// circuit, exactly.
RootTwoValue amplitude_from_triple(const OutcomeTriple& o);

/// Renders (n1 - n2)/sqrt(2)^h as "a/2^m·√2^e" with a odd, e in {0,1}
/// (just "a" when the denominator is trivial, "0" when a = 0).
std::string amplitude_string(const OutcomeTriple& o);

/// Exact probability that the first k qubits of v|0...0> read z, computed
/// by enumerating the probe circuit for z. CH circuits only.
Rational outcome_probability(const Circuit& v, unsigned k, uint64_t z);

/// Exact output distribution of the first k qubits of v|0...0>; dyadic
/// entries with denominator 2^h.
ExactDist exact_output_distribution(const Circuit& v, unsigned k);

}  // namespace rqp
