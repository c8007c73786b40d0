#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rqp/random_circuits.h"
#include "rqp/rng.h"
#include "rqp/statevector.h"

using namespace rqp;

namespace {

using Cx = std::complex<double>;
using Vec = std::vector<Cx>;
using Mat = std::vector<Vec>;

// Second opinion on the simulator: build each gate as an explicit
// 2^n-by-2^n matrix straight from its textbook definition and multiply
// it into the state. Shares no code with the production kernels.
bool fires(uint64_t basis, const std::vector<Control>& ctrls) {
    for (const Control& c : ctrls) {
        if ((((basis >> c.qubit) & 1) != 0) != c.on_one) {
            return false;
        }
    }
    return true;
}

Mat gate_matrix(const Gate& g, uint32_t width) {
    const uint64_t dim = uint64_t{1} << width;
    const uint64_t tbit = uint64_t{1} << g.target;
    Mat m(dim, Vec(dim, Cx{0.0, 0.0}));
    const double r = 1.0 / std::sqrt(2.0);
    for (uint64_t i = 0; i < dim; ++i) {
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CX:
            case GateKind::CCX:
            case GateKind::MCX:
                m[fires(i, g.controls) ? i ^ tbit : i][i] = 1.0;
                break;
            case GateKind::H:
                if (i & tbit) {
                    m[i & ~tbit][i] = r;
                    m[i][i] = -r;
                } else {
                    m[i][i] = r;
                    m[i | tbit][i] = r;
                }
                break;
            case GateKind::CZ: {
                uint64_t obit = uint64_t{1} << g.controls[0].qubit;
                m[i][i] = ((i & tbit) && (i & obit)) ? -1.0 : 1.0;
                break;
            }
            case GateKind::S:
                m[i][i] = (i & tbit) ? Cx{0.0, 1.0} : Cx{1.0, 0.0};
                break;
            case GateKind::T:
                m[i][i] = (i & tbit) ? Cx{r, r} : Cx{1.0, 0.0};
                break;
        }
    }
    return m;
}

Vec matrix_state(const Circuit& c) {
    const uint64_t dim = uint64_t{1} << c.width;
    Vec state(dim, Cx{0.0, 0.0});
    state[0] = 1.0;
    for (const Gate& g : c.gates) {
        Mat m = gate_matrix(g, c.width);
        Vec next(dim, Cx{0.0, 0.0});
        for (uint64_t row = 0; row < dim; ++row) {
            for (uint64_t col = 0; col < dim; ++col) {
                next[row] += m[row][col] * state[col];
            }
        }
        state = std::move(next);
    }
    return state;
}

double max_amp_diff(const StateAmplitudes& s, const Vec& reference) {
    double worst = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        worst = std::max(worst, std::abs(s.amps[i] - reference[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("single-gate states match the textbook values") {
    StateAmplitudes h = simulate(parse_circuit("qubits 1\ngateset ch\nh 0\n"));
    CHECK(h.amps[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(h.amps[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    StateAmplitudes x = simulate(parse_circuit("qubits 1\ngateset ch\nx 0\n"));
    CHECK(std::abs(x.amps[0]) == doctest::Approx(0.0));
    CHECK(x.amps[1].real() == doctest::Approx(1.0));

    StateAmplitudes hh = simulate(parse_circuit("qubits 1\ngateset ch\nh 0\nh 0\n"));
    CHECK(hh.amps[0].real() == doctest::Approx(1.0));
    CHECK(std::abs(hh.amps[1]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("H S S H acts as a bit flip") {
    // HZH = X, and S² = Z, so this CT circuit sends |0> to |1>.
    StateAmplitudes s = simulate(parse_circuit("qubits 1\ngateset ct\nh 0\ns 0\ns 0\nh 0\n"));
    CHECK(std::abs(s.amps[0]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(s.amps[1]) == doctest::Approx(1.0));
}

TEST_CASE("branching-circuit state worked by hand") {
    Circuit c = parse_circuit("qubits 3\ngateset ch\nx 0\nh 0\ncx 0 1\nh 1\n");
    StateAmplitudes s = simulate(c);
    // (|00> - |10> + |01> + |11>)/2 on qubits (0,1), qubit 2 untouched.
    CHECK(s.amps[0].real() == doctest::Approx(0.5));
    CHECK(s.amps[1].real() == doctest::Approx(-0.5));
    CHECK(s.amps[2].real() == doctest::Approx(0.5));
    CHECK(s.amps[3].real() == doctest::Approx(0.5));
    for (std::size_t i = 4; i < 8; ++i) {
        CHECK(std::abs(s.amps[i]) == doctest::Approx(0.0));
    }
    CHECK(amplitude_at_zero(c) == doctest::Approx(0.5));
    std::vector<double> marg = marginal_probs(s, 2);
    for (double p : marg) {
        CHECK(p == doctest::Approx(0.25));
    }
    CHECK(z1_expectation(c) == doctest::Approx(0.0));
}

TEST_CASE("z expectation endpoints") {
    CHECK(z1_expectation(parse_circuit("qubits 1\ngateset ch\n")) == doctest::Approx(1.0));
    CHECK(z1_expectation(parse_circuit("qubits 1\ngateset ch\nx 0\n")) == doctest::Approx(-1.0));
    CHECK(z1_expectation(parse_circuit("qubits 1\ngateset ch\nh 0\n")) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("marginals sum to one and respect the qubit order") {
    StateAmplitudes s = simulate(parse_circuit("qubits 2\ngateset ch\nx 1\n"));
    std::vector<double> marg = marginal_probs(s, 2);
    // Qubit 1 is set, qubit 0 clear: all mass on z = 10 (index 2).
    CHECK(marg[0] == doctest::Approx(0.0));
    CHECK(marg[2] == doctest::Approx(1.0));
    std::vector<double> one = marginal_probs(s, 1);
    CHECK(one[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(marginal_probs(s, 3), std::invalid_argument);
}

TEST_CASE("random circuits agree with the dense-matrix oracle") {
    Rng rng(0x51a7e5);
    for (int trial = 0; trial < 30; ++trial) {
        unsigned width = 1 + static_cast<unsigned>(rng.below(4));
        Circuit c = random_ch_circuit(rng, width, 3 + rng.below(8), 6);
        StateAmplitudes s = simulate(c);
        CHECK(max_amp_diff(s, matrix_state(c)) <= 1e-12);
    }
    for (int trial = 0; trial < 30; ++trial) {
        unsigned width = 1 + static_cast<unsigned>(rng.below(4));
        Circuit c = random_ct_circuit(rng, width, 3 + rng.below(8), 8);
        StateAmplitudes s = simulate(c);
        CHECK(max_amp_diff(s, matrix_state(c)) <= 1e-12);
        double norm = 0.0;
        for (const Cx& a : s.amps) {
            norm += std::norm(a);
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("width limits and gate-set guards") {
    CHECK_THROWS_AS(simulate(Circuit(STATEVECTOR_MAX_WIDTH + 1, GateSet::CH)),
                    std::invalid_argument);
    Circuit ct = parse_circuit("qubits 1\ngateset ct\nh 0\n");
    CHECK_THROWS_AS(amplitude_at_zero(ct), std::invalid_argument);
}
