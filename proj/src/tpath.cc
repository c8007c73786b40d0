#include "rqp/tpath.h"

#include <unordered_map>

namespace rqp {

PauliTerm conjugate_clifford(const PauliTerm& t, const Gate& g) {
    PauliTerm out = t;
    const uint32_t j = g.target;
    const uint64_t jbit = uint64_t{1} << j;
    switch (g.kind) {
        case GateKind::H: {
            // X <-> Z, Y -> -Y
            bool x = out.p.x_mask & jbit;
            bool z = out.p.z_mask & jbit;
            if (x && z) {
                out.sign = -out.sign;
            }
            out.p.x_mask = z ? (out.p.x_mask | jbit) : (out.p.x_mask & ~jbit);
            out.p.z_mask = x ? (out.p.z_mask | jbit) : (out.p.z_mask & ~jbit);
            return out;
        }
        case GateKind::S: {
            // X -> -Y, Y -> X, Z -> Z
            if (out.p.x_mask & jbit) {
                if (!(out.p.z_mask & jbit)) {
                    out.sign = -out.sign;
                }
                out.p.z_mask ^= jbit;
            }
            return out;
        }
        case GateKind::CZ: {
            const uint32_t a = g.controls[0].qubit;
            const uint32_t b = g.target;
            const uint64_t abit = uint64_t{1} << a;
            const uint64_t bbit = uint64_t{1} << b;
            bool xa = out.p.x_mask & abit;
            bool xb = out.p.x_mask & bbit;
            bool za = out.p.z_mask & abit;
            bool zb = out.p.z_mask & bbit;
            if (xa && xb && (za != zb)) {
                out.sign = -out.sign;
            }
            if (xb) {
                out.p.z_mask ^= abit;
            }
            if (xa) {
                out.p.z_mask ^= bbit;
            }
            return out;
        }
        default:
            throw std::invalid_argument("'" + gate_kind_name(g.kind) + "' is not a Clifford gate here");
    }
}

TBranches branch_t(const PauliTerm& t, uint32_t j) {
    TBranches out;
    Pauli p = t.p.at(j);
    if (p == Pauli::I || p == Pauli::Z) {
        out.terms[0] = t;
        out.count = 1;
        return out;
    }
    PauliTerm tx = t, ty = t;
    tx.p.set(j, Pauli::X);
    ty.p.set(j, Pauli::Y);
    tx.k = ty.k = t.k + 1;
    // Backward conjugation t†pt, matching the walk direction: the Y
    // branch of an incoming X picks up the minus sign.
    if (p == Pauli::X) {
        ty.sign = -t.sign;
    }
    out.terms = {tx, ty};
    out.count = 2;
    return out;
}

namespace {

struct PauliHash {
    std::size_t operator()(const PauliString& p) const {
        uint64_t h = p.x_mask * 0x9e3779b97f4a7c15ULL;
        h ^= p.z_mask + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

using Frontier = std::unordered_map<PauliString, RootTwoValue, PauliHash>;

void add_term(Frontier& f, const PauliString& p, const RootTwoValue& coef) {
    auto [it, inserted] = f.try_emplace(p, coef);
    if (!inserted) {
        it->second = it->second + coef;
        if (it->second.is_zero()) {
            f.erase(it);
        }
    }
}

}  // namespace

RootTwoValue z_expectation(const Circuit& c, std::size_t max_frontier) {
    if (c.gate_set != GateSet::CT) {
        throw std::invalid_argument("Pauli propagation runs CT circuits only");
    }
    if (c.width > 64) {
        throw std::invalid_argument("Pauli mask cap is 64 qubits");
    }

    Frontier frontier;
    PauliString z1;
    z1.set(0, Pauli::Z);
    frontier.emplace(z1, RootTwoValue::one());

    // Heisenberg order: the observable meets the last gate first, so the
    // gate list is walked back to front.
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        const Gate& g = *it;
        Frontier next;
        next.reserve(frontier.size() * (g.kind == GateKind::T ? 2 : 1));
        for (const auto& [str, coef] : frontier) {
            PauliTerm term{str, +1, 0};
            if (g.kind == GateKind::T) {
                TBranches br = branch_t(term, g.target);
                if (br.count == 1) {
                    add_term(next, str, coef);
                } else {
                    for (int i = 0; i < 2; ++i) {
                        const PauliTerm& bt = br.terms[i];
                        RootTwoValue piece = coef.times_inv_sqrt2();
                        add_term(next, bt.p, bt.sign > 0 ? piece : -piece);
                    }
                }
            } else {
                PauliTerm ct = conjugate_clifford(term, g);
                add_term(next, ct.p, ct.sign > 0 ? coef : -coef);
            }
            if (next.size() > max_frontier) {
                throw BudgetError("Pauli-term frontier exceeds " + std::to_string(max_frontier));
            }
        }
        frontier = std::move(next);
    }

    RootTwoValue total = RootTwoValue::zero();
    for (const auto& [str, coef] : frontier) {
        if (str.diagonal()) {
            total = total + coef;
        }
    }
    return total;
}

RootTwoValue acceptance_probability(const Circuit& c) {
    return (RootTwoValue::one() + z_expectation(c)).halved();
}

}  // namespace rqp
