#include "rqp/hpath.h"

#include <sstream>
#include <unordered_map>

namespace rqp {

namespace {

bool classical_controls_fire(uint64_t bits, const std::vector<Control>& ctrls) {
    for (const Control& c : ctrls) {
        bool bit = (bits >> c.qubit) & 1;
        if (bit != c.on_one) {
            return false;
        }
    }
    return true;
}

uint64_t permute_bits(uint64_t bits, const Gate& g) {
    if (classical_controls_fire(bits, g.controls)) {
        bits ^= uint64_t{1} << g.target;
    }
    return bits;
}

void check_ch(const Circuit& c) {
    if (c.gate_set != GateSet::CH) {
        throw std::invalid_argument("path machine runs CH circuits only");
    }
    if (c.width > 63) {
        throw std::invalid_argument("path machine register cap is 63 bits");
    }
}

}  // namespace

PathRegister apply_step(const PathRegister& r, const Gate& g, Coin coin) {
    if (g.kind == GateKind::H) {
        if (coin == Coin::None) {
            throw std::invalid_argument("H step needs a coin");
        }
        const uint64_t tbit = uint64_t{1} << g.target;
        PathRegister out = r;
        if (coin == Coin::Heads) {
            out.bits &= ~tbit;
        } else {
            out.c = out.c ^ (((r.bits >> g.target) & 1) != 0);  // pre-update bit value
            out.bits |= tbit;
        }
        return out;
    }
    if (!gate_in_set(g.kind, GateSet::CH)) {
        throw std::invalid_argument("non-CH gate in path machine");
    }
    if (coin != Coin::None) {
        throw std::invalid_argument("classical step takes no coin");
    }
    return {permute_bits(r.bits, g), r.c};
}

int classify(const PathRegister& r) {
    if (r.bits != 0) {
        return 3;
    }
    return r.c ? 2 : 1;
}

int sample_run(const Circuit& c, Rng& rng) {
    check_ch(c);
    PathRegister reg;
    for (const Gate& g : c.gates) {
        Coin coin = g.kind == GateKind::H ? (rng.coin() ? Coin::Heads : Coin::Tails) : Coin::None;
        reg = apply_step(reg, g, coin);
    }
    return classify(reg);
}

OutcomeTriple enumerate_paths(const Circuit& c, std::size_t max_frontier) {
    check_ch(c);
    // Key packs (bits, c); merging identical register states is sound
    // because all paths carry equal weight and counts add.
    std::unordered_map<uint64_t, Int> frontier;
    frontier.reserve(64);
    frontier[0] = 1;

    for (const Gate& g : c.gates) {
        std::unordered_map<uint64_t, Int> next;
        next.reserve(frontier.size() * (g.kind == GateKind::H ? 2 : 1));
        for (const auto& [key, count] : frontier) {
            PathRegister reg{key >> 1, (key & 1) != 0};
            if (g.kind == GateKind::H) {
                PathRegister a = apply_step(reg, g, Coin::Heads);
                PathRegister b = apply_step(reg, g, Coin::Tails);
                next[(a.bits << 1) | (a.c ? 1 : 0)] += count;
                next[(b.bits << 1) | (b.c ? 1 : 0)] += count;
            } else {
                PathRegister a = apply_step(reg, g, Coin::None);
                next[(a.bits << 1) | (a.c ? 1 : 0)] += count;
            }
            if (next.size() > max_frontier) {
                throw BudgetError("path frontier exceeds " + std::to_string(max_frontier));
            }
        }
        frontier = std::move(next);
    }

    OutcomeTriple out;
    out.h = hadamard_count(c);
    for (const auto& [key, count] : frontier) {
        uint64_t bits = key >> 1;
        bool phase = (key & 1) != 0;
        if (bits != 0) {
            out.n3 += count;
        } else if (phase) {
            out.n2 += count;
        } else {
            out.n1 += count;
        }
    }
    return out;
}

RootTwoValue amplitude_from_triple(const OutcomeTriple& o) {
    return RootTwoValue::inv_sqrt2_pow(o.n1 - o.n2, o.h);
}

std::string amplitude_string(const OutcomeTriple& o) {
    Int num = o.n1 - o.n2;
    if (num == 0) {
        return "0";
    }
    unsigned e = o.h % 2;
    unsigned m = o.h / 2;
    while (m > 0 && (num & 1) == 0) {
        num >>= 1;
        --m;
    }
    if (m == 0 && e == 0) {
        return num.str();
    }
    std::ostringstream out;
    out << num.str() << "/2^" << m << "·√2^" << e;
    return out.str();
}

Rational outcome_probability(const Circuit& v, unsigned k, uint64_t z) {
    OutcomeTriple o = enumerate_paths(build_w_circuit(v, k, z));
    // Amplitude of the probe circuit equals the outcome probability; with
    // 2h coin flips in the probe this reduces to (n1 - n2) / 2^h.
    unsigned h = hadamard_count(v);
    return Rational(o.n1 - o.n2, pow2_int(h));
}

ExactDist exact_output_distribution(const Circuit& v, unsigned k) {
    ExactDist d;
    d.k = k;
    d.probs.reserve(std::size_t{1} << k);
    for (uint64_t z = 0; z < (uint64_t{1} << k); ++z) {
        d.probs.push_back(outcome_probability(v, k, z));
    }
    d.validate();
    return d;
}

}  // namespace rqp
