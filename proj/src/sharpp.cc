#include "rqp/sharpp.h"

#include <bit>
#include <sstream>

#include "rqp/hpath.h"

namespace rqp {

BooleanFunction BooleanFunction::from_table(unsigned n, std::vector<uint8_t> table) {
    if (n > 20) {
        throw std::invalid_argument("function arity cap is 20 bits");
    }
    if (table.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("truth table needs 2^n entries");
    }
    for (uint8_t v : table) {
        if (v > 1) {
            throw std::invalid_argument("truth table entries must be 0 or 1");
        }
    }
    BooleanFunction f;
    f.n_ = n;
    f.table_ = std::move(table);
    return f;
}

BooleanFunction BooleanFunction::from_circuit(Circuit c, unsigned arity, unsigned output_qubit) {
    if (c.gate_set != GateSet::CH) {
        throw std::invalid_argument("function circuits use the CH gate set");
    }
    if (hadamard_count(c) != 0) {
        throw std::invalid_argument("function circuits must be coin-free (no H gates)");
    }
    if (arity > 20 || arity == 0 || arity > c.width) {
        throw std::invalid_argument("arity must be in [1, min(width, 20)]");
    }
    if (output_qubit >= c.width) {
        throw std::invalid_argument("output qubit out of range");
    }
    if (c.width > 63) {
        throw std::invalid_argument("function circuit cap is 63 qubits");
    }
    BooleanFunction f;
    f.n_ = arity;
    f.circuit_ = std::move(c);
    f.output_qubit_ = output_qubit;
    return f;
}

int BooleanFunction::eval(uint64_t x) const {
    if (x >> n_ != 0) {
        throw std::invalid_argument("input outside the function domain");
    }
    if (!circuit_) {
        return table_[x];
    }
    // Inputs sit on the low qubits, ancillas start at 0; classical gates
    // permute the register exactly as in the path machine.
    PathRegister reg{x, false};
    for (const Gate& g : circuit_->gates) {
        reg = apply_step(reg, g, Coin::None);
    }
    return static_cast<int>((reg.bits >> output_qubit_) & 1);
}

Int BooleanFunction::zero_count() const {
    Int zeros = 0;
    for (uint64_t x = 0; x < (uint64_t{1} << n_); ++x) {
        zeros += eval(x) == 0;
    }
    return zeros;
}

BooleanFunction parse_truth_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<uint8_t> table;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token)) {
            continue;  // blank or comment-only line
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError(lineno, "expected a single bit");
        }
        if (token == "0" || token == "1") {
            table.push_back(token == "1");
        } else {
            throw ParseError(lineno, "expected 0 or 1, got '" + token + "'");
        }
    }
    if (table.empty() || (table.size() & (table.size() - 1)) != 0) {
        throw ParseError(lineno, "truth table needs a power-of-two number of entries");
    }
    unsigned n = static_cast<unsigned>(std::countr_zero(table.size()));
    return BooleanFunction::from_table(n, std::move(table));
}

ExactDist phi_distribution(const BooleanFunction& phi) {
    ExactDist d;
    d.k = 1;
    Rational zero_share(phi.zero_count(), pow2_int(phi.arity()));
    d.probs = {zero_share, 1 - zero_share};
    return d;
}

namespace {

void check_binary_report(const ExactDist& report) {
    report.validate();
    if (report.k != 1) {
        throw std::invalid_argument("elicitation reports are over one output bit");
    }
}

}  // namespace

Rational run_sharpp_round(const BooleanFunction& phi, const ExactDist& report, Rng& rng) {
    check_binary_report(report);
    uint64_t x = rng.draw_bits(phi.arity());
    return brier_score(static_cast<uint64_t>(phi.eval(x)), report);
}

Rational expected_reward_sharpp(const BooleanFunction& phi, const ExactDist& report) {
    check_binary_report(report);
    ExactDist d = phi_distribution(phi);
    Rational total = 0;
    for (uint64_t w = 0; w < 2; ++w) {
        total += d.probs[w] * brier_score(w, report);
    }
    return total;
}

ExhaustiveElicitation exhaustive_elicitation_n3() {
    ExhaustiveElicitation out;
    for (unsigned bits = 0; bits < 256; ++bits) {
        std::vector<uint8_t> table(8);
        for (unsigned x = 0; x < 8; ++x) {
            table[x] = (bits >> x) & 1;
        }
        BooleanFunction phi = BooleanFunction::from_table(3, std::move(table));
        unsigned zeros = static_cast<unsigned>(phi.zero_count().convert_to<unsigned>());

        // Scan the full denominator-8 report grid for the payoff argmax.
        unsigned best = 9;
        Rational best_value;
        bool unique = true;
        for (unsigned i = 0; i <= 8; ++i) {
            ExactDist report;
            report.k = 1;
            report.probs = {Rational(i, 8), Rational(8 - i, 8)};
            Rational value = expected_reward_sharpp(phi, report);
            if (best == 9 || value > best_value) {
                best = i;
                best_value = value;
                unique = true;
            } else if (value == best_value) {
                unique = false;
            }
        }
        if (!(unique && best == zeros)) {
            out.argmax_unique_at_truth = false;
        }
        if (Rational(8) * phi_distribution(phi).probs[0] != zeros) {
            out.count_recovered = false;
        }
        ++out.functions;
    }
    return out;
}

}  // namespace rqp
