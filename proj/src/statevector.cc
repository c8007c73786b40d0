#include "rqp/statevector.h"

#include <cmath>
#include <numbers>

namespace rqp {

namespace {

constexpr double INV_SQRT2 = std::numbers::sqrt2 / 2.0;

bool controls_satisfied(uint64_t basis, const std::vector<Control>& ctrls) {
    for (const Control& c : ctrls) {
        bool bit = (basis >> c.qubit) & 1;
        if (bit != c.on_one) {
            return false;
        }
    }
    return true;
}

void apply_gate(StateAmplitudes& s, const Gate& g) {
    const uint64_t dim = uint64_t{1} << s.width;
    const uint64_t tbit = uint64_t{1} << g.target;
    switch (g.kind) {
        case GateKind::H: {
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & tbit) {
                    continue;
                }
                auto a0 = s.amps[i];
                auto a1 = s.amps[i | tbit];
                s.amps[i] = (a0 + a1) * INV_SQRT2;
                s.amps[i | tbit] = (a0 - a1) * INV_SQRT2;
            }
            break;
        }
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::MCX: {
            for (uint64_t i = 0; i < dim; ++i) {
                if ((i & tbit) || !controls_satisfied(i, g.controls)) {
                    continue;
                }
                std::swap(s.amps[i], s.amps[i | tbit]);
            }
            break;
        }
        case GateKind::CZ: {
            const uint64_t obit = uint64_t{1} << g.controls[0].qubit;
            for (uint64_t i = 0; i < dim; ++i) {
                if ((i & tbit) && (i & obit)) {
                    s.amps[i] = -s.amps[i];
                }
            }
            break;
        }
        case GateKind::S: {
            const std::complex<double> phase(0.0, 1.0);
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & tbit) {
                    s.amps[i] *= phase;
                }
            }
            break;
        }
        case GateKind::T: {
            const std::complex<double> phase(INV_SQRT2, INV_SQRT2);  // e^{i·pi/4}
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & tbit) {
                    s.amps[i] *= phase;
                }
            }
            break;
        }
    }
}

}  // namespace

StateAmplitudes simulate(const Circuit& c) {
    if (c.width > STATEVECTOR_MAX_WIDTH) {
        throw std::invalid_argument("statevector width cap is " +
                                    std::to_string(STATEVECTOR_MAX_WIDTH) + " qubits");
    }
    StateAmplitudes s;
    s.width = c.width;
    s.amps.assign(uint64_t{1} << c.width, {0.0, 0.0});
    s.amps[0] = {1.0, 0.0};
    for (const Gate& g : c.gates) {
        apply_gate(s, g);
    }
    return s;
}

std::vector<double> marginal_probs(const StateAmplitudes& s, unsigned k) {
    if (k > s.width) {
        throw std::invalid_argument("marginal width exceeds state width");
    }
    std::vector<double> probs(uint64_t{1} << k, 0.0);
    const uint64_t mask = (uint64_t{1} << k) - 1;
    for (uint64_t i = 0; i < s.amps.size(); ++i) {
        probs[i & mask] += std::norm(s.amps[i]);
    }
    return probs;
}

double z1_expectation(const Circuit& c) {
    StateAmplitudes s = simulate(c);
    double e = 0.0;
    for (uint64_t i = 0; i < s.amps.size(); ++i) {
        double p = std::norm(s.amps[i]);
        e += (i & 1) ? -p : p;
    }
    return e;
}

double amplitude_at_zero(const Circuit& c) {
    if (c.gate_set != GateSet::CH) {
        throw std::invalid_argument("real amplitude readout requires a CH circuit");
    }
    StateAmplitudes s = simulate(c);
    return s.amps[0].real();
}

}  // namespace rqp
