#pragma once

#include <complex>
#include <vector>

#include "rqp/circuit.h"

namespace rqp {

/// Dense brute-force simulator. Ground truth for the exact engines on
/// small widths; double-precision only.
struct StateAmplitudes {
    uint32_t width = 0;
    std::vector<std::complex<double>> amps;
};

inline constexpr uint32_t STATEVECTOR_MAX_WIDTH = 22;

/// Amplitudes of c applied to |0...0>. Deterministic; width <= 22.
StateAmplitudes simulate(const Circuit& c);

/// Probabilities of outcomes of the first k qubits (index bit i = qubit i).
std::vector<double> marginal_probs(const StateAmplitudes& s, unsigned k);

/// <0|c† (Z on qubit 0) c|0> = P[qubit0 = 0] - P[qubit0 = 1].
double z1_expectation(const Circuit& c);

/// <0...0|c|0...0> for CH circuits (all-real amplitudes).
double amplitude_at_zero(const Circuit& c);

}  // namespace rqp
