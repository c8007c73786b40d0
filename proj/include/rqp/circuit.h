#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rqp {

// Two fixed gate sets:
//   CH — classical gates plus Hadamard (X, CX, CCX, MCX, H)
//   CT — Clifford plus T (H, CZ, S, T)
enum class GateSet { CH, CT };

enum class GateKind { X, CX, CCX, MCX, H, CZ, S, T };

struct Control {
    uint32_t qubit;
    bool on_one;  // true: control fires on |1>, false: on |0>

    bool operator==(const Control&) const = default;
};

/// One gate. `controls` is nonempty only for CX/CCX/CZ/MCX; for CZ it
/// holds the second participant (the gate is symmetric).
struct Gate {
    GateKind kind;
    uint32_t target;
    std::vector<Control> controls;

    static Gate x(uint32_t q) { return {GateKind::X, q, {}}; }
    static Gate h(uint32_t q) { return {GateKind::H, q, {}}; }
    static Gate s(uint32_t q) { return {GateKind::S, q, {}}; }
    static Gate t(uint32_t q) { return {GateKind::T, q, {}}; }
    static Gate cx(uint32_t ctrl, uint32_t tgt) { return {GateKind::CX, tgt, {{ctrl, true}}}; }
    static Gate ccx(uint32_t c1, uint32_t c2, uint32_t tgt) {
        return {GateKind::CCX, tgt, {{c1, true}, {c2, true}}};
    }
    static Gate cz(uint32_t q1, uint32_t q2) { return {GateKind::CZ, q2, {{q1, true}}}; }
    static Gate mcx(std::vector<Control> ctrls, uint32_t tgt) {
        return {GateKind::MCX, tgt, std::move(ctrls)};
    }

    /// All qubits the gate touches (controls first, then target).
    std::vector<uint32_t> qubits() const;

    bool operator==(const Gate&) const = default;
};

bool gate_in_set(GateKind kind, GateSet set);
std::string gate_kind_name(GateKind kind);

struct Circuit {
    uint32_t width = 1;
    GateSet gate_set = GateSet::CH;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(uint32_t width_, GateSet set) : width(width_), gate_set(set) {
        if (width == 0) {
            throw std::invalid_argument("circuit width must be >= 1");
        }
    }

    /// Validates set membership, arity, index ranges, and distinctness.
    void append(Gate g);

    bool operator==(const Circuit&) const = default;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Parses the line-based text format:
///   qubits <n>
///   gateset ch|ct
///   x <q> | h <q> | s <q> | t <q> | cx <c> <t> | ccx <c1> <c2> <t>
///   cz <q1> <q2> | mcx [+|-]<q> ... <tgt>
/// '#' starts a comment; blank lines are ignored.
Circuit parse_circuit(const std::string& text);

/// Inverse of parse_circuit: parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit& c);

/// Number of H gates.
unsigned hadamard_count(const Circuit& c);

/// Gates reversed; valid as the inverse circuit because every CH gate is
/// self-inverse. Rejects CT circuits.
Circuit reverse_self_inverse(const Circuit& c);

inline constexpr unsigned K_MAX = 20;

/// The (n+1)-qubit probe circuit for outcome z of V's first k qubits:
/// run V, flip the ancilla unless the first k qubits read z, run V again
/// (= V†). Its amplitude at |0...0> equals the probability of outcome z.
/// The ancilla is the last qubit (index n); z bit i belongs to qubit i.
Circuit build_w_circuit(const Circuit& v, unsigned k, uint64_t z);

/// Renders outcome `z` as a bit string, leftmost character = qubit 0.
std::string outcome_bits(uint64_t z, unsigned k);
/// Inverse of outcome_bits; throws on non-binary characters or length mismatch.
uint64_t parse_outcome_bits(const std::string& bits, unsigned k);

/// FNV-1a over the canonical printed form; stable across runs.
std::string circuit_hash(const Circuit& c);

}  // namespace rqp
