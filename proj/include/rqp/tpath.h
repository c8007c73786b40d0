#pragma once

#include <array>

#include "rqp/circuit.h"
#include "rqp/hpath.h"  // BudgetError, FRONTIER_MAX
#include "rqp/roottwo.h"

namespace rqp {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 3, Z = 2 };  // value = x_bit | z_bit<<1

/// n-qubit Pauli string as x/z bit masks: qubit j carries I/X/Y/Z for
/// (x_j, z_j) = (0,0)/(1,0)/(1,1)/(0,1).
struct PauliString {
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;

    Pauli at(uint32_t j) const {
        return static_cast<Pauli>(((x_mask >> j) & 1) | (((z_mask >> j) & 1) << 1));
    }
    void set(uint32_t j, Pauli p) {
        uint64_t bit = uint64_t{1} << j;
        x_mask = (static_cast<uint8_t>(p) & 1) ? (x_mask | bit) : (x_mask & ~bit);
        z_mask = (static_cast<uint8_t>(p) & 2) ? (z_mask | bit) : (z_mask & ~bit);
    }
    /// true when the string is built from Z and I alone.
    bool diagonal() const { return x_mask == 0; }

    bool operator==(const PauliString&) const = default;
};

/// One branch of the non-deterministic machine: Pauli string, sign, and
/// the count k of branching transitions taken (each contributing 1/sqrt2).
struct PauliTerm {
    PauliString p;
    int sign = +1;  // +1 or -1
    unsigned k = 0;
};

/// Signed Heisenberg conjugation p -> g†pg for g in {H, S, CZ}. The sign
/// table is pinned by an exhaustive matrix check in the test suite.
PauliTerm conjugate_clifford(const PauliTerm& t, const Gate& g);

struct TBranches {
    std::array<PauliTerm, 2> terms;
    int count = 1;
};

/// The T-gate transition on qubit j, in the same backward convention as
/// conjugate_clifford: t†xt = (x - y)/sqrt2 and t†yt = (x + y)/sqrt2, so
/// I/Z pass through, X splits into {X, Y with flipped sign}, Y splits
/// into {X, Y}; splits increment k.
TBranches branch_t(const PauliTerm& t, uint32_t j);

/// Exact <0...0|c† (Z on qubit 0) c|0...0> for CT circuits, as a sum of
/// c_i / sqrt(2)^{k_i} over the surviving diagonal strings. Terms with
/// equal Pauli string are merged by exact coefficient addition; throws
/// BudgetError if the term frontier would exceed max_frontier.
RootTwoValue z_expectation(const Circuit& c, std::size_t max_frontier = FRONTIER_MAX);

/// 1/2 + z_expectation(c)/2: probability that qubit 0 measures 0.
RootTwoValue acceptance_probability(const Circuit& c);

}  // namespace rqp
