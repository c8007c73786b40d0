#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rqp/circuit.h"
#include "rqp/rng.h"
#include "rqp/scoring.h"

namespace rqp {

/// Total Boolean function on {0,1}^n, n <= 20. Backed either by an
/// explicit truth table or by a classical (coin-free) CH circuit whose
/// output is read from one designated qubit.
class BooleanFunction {
  public:
    static BooleanFunction from_table(unsigned n, std::vector<uint8_t> table);
    static BooleanFunction from_circuit(Circuit c, unsigned arity, unsigned output_qubit);

    unsigned arity() const { return n_; }
    int eval(uint64_t x) const;

    /// Number of inputs with eval(x) == 0, the quantity the protocol
    /// elicits.
    Int zero_count() const;

  private:
    BooleanFunction() = default;

    unsigned n_ = 0;
    std::vector<uint8_t> table_;       // used when circuit_ is absent
    std::optional<Circuit> circuit_;   // sparse evaluation path
    unsigned output_qubit_ = 0;
};

/// Truth-table text: one bit per line, 2^n lines; '#' comments and blank
/// lines allowed. The arity is inferred from the line count.
BooleanFunction parse_truth_table(const std::string& text);

/// The distribution of phi(x) for x uniform: (zeros/2^n, 1 - zeros/2^n).
ExactDist phi_distribution(const BooleanFunction& phi);

/// One elicitation round: x uniform, w = phi(x), payoff = the raw score
/// S(w, report) in [-2, 0].
Rational run_sharpp_round(const BooleanFunction& phi, const ExactDist& report, Rng& rng);

/// Exact expected payoff sum_w D(w)·S(w, report); uniquely maximized at
/// report = D with gap sum_w (D(w) - report(w))².
Rational expected_reward_sharpp(const BooleanFunction& phi, const ExactDist& report);

/// Exhaustive check over all 256 functions on 3 bits: on the report grid
/// with denominator 8, expected payoff must peak uniquely at the true
/// distribution, and 2^n·D(0) must reproduce the zero count.
struct ExhaustiveElicitation {
    unsigned functions = 0;
    bool argmax_unique_at_truth = true;
    bool count_recovered = true;
};
ExhaustiveElicitation exhaustive_elicitation_n3();

}  // namespace rqp
