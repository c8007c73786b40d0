#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "rqp/random_circuits.h"
#include "rqp/statevector.h"
#include "rqp/tpath.h"

using namespace rqp;

namespace {

PauliTerm term1(Pauli p, int sign = +1, unsigned k = 0) {
    PauliTerm t;
    t.p.set(0, p);
    t.sign = sign;
    t.k = k;
    return t;
}

PauliTerm term2(Pauli p0, Pauli p1, int sign = +1) {
    PauliTerm t;
    t.p.set(0, p0);
    t.p.set(1, p1);
    t.sign = sign;
    return t;
}

// 2x2 complex matrices, row-major: the oracle for every single-qubit
// conjugation rule.
using C2 = std::complex<double>;
using M2 = std::array<C2, 4>;

M2 mat_mul(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 mat_dag(const M2& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

M2 mat_scale(const M2& a, C2 s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

M2 mat_add(const M2& a, const M2& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

bool mat_close(const M2& a, const M2& b) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12) {
            return false;
        }
    }
    return true;
}

M2 pauli_mat(Pauli p) {
    const C2 i{0.0, 1.0};
    switch (p) {
        case Pauli::I: return {1, 0, 0, 1};
        case Pauli::X: return {0, 1, 1, 0};
        case Pauli::Y: return {0, -i, i, 0};
        case Pauli::Z: return {1, 0, 0, -1};
    }
    return {};
}

/// g† p g for a single-qubit gate matrix g.
M2 conj_by(const M2& g, const M2& p) { return mat_mul(mat_dag(g), mat_mul(p, g)); }

}  // namespace

TEST_CASE("pauli strings pack x and z masks per qubit") {
    PauliString p;
    p.set(0, Pauli::X);
    p.set(1, Pauli::Y);
    p.set(2, Pauli::Z);
    CHECK(p.at(0) == Pauli::X);
    CHECK(p.at(1) == Pauli::Y);
    CHECK(p.at(2) == Pauli::Z);
    CHECK(p.at(3) == Pauli::I);
    CHECK(!p.diagonal());
    p.set(0, Pauli::I);
    p.set(1, Pauli::Z);
    CHECK(p.diagonal());
    CHECK(p.x_mask == 0);
}

TEST_CASE("hadamard conjugation swaps X and Z and flips Y") {
    CHECK(conjugate_clifford(term1(Pauli::X), Gate::h(0)).p.at(0) == Pauli::Z);
    CHECK(conjugate_clifford(term1(Pauli::X), Gate::h(0)).sign == 1);
    CHECK(conjugate_clifford(term1(Pauli::Z), Gate::h(0)).p.at(0) == Pauli::X);
    CHECK(conjugate_clifford(term1(Pauli::Y), Gate::h(0)).p.at(0) == Pauli::Y);
    CHECK(conjugate_clifford(term1(Pauli::Y), Gate::h(0)).sign == -1);
    CHECK(conjugate_clifford(term1(Pauli::I), Gate::h(0)).p.at(0) == Pauli::I);
    // Signs compose with the incoming sign, and the branch count is kept.
    PauliTerm in = term1(Pauli::X, -1, 5);
    PauliTerm out = conjugate_clifford(in, Gate::h(0));
    CHECK(out.p.at(0) == Pauli::Z);
    CHECK(out.sign == -1);
    CHECK(out.k == 5);
    PauliTerm y = conjugate_clifford(term1(Pauli::Y, -1), Gate::h(0));
    CHECK(y.sign == 1);
}

TEST_CASE("phase-gate conjugation rotates X into minus Y") {
    PauliTerm sx = conjugate_clifford(term1(Pauli::X), Gate::s(0));
    CHECK(sx.p.at(0) == Pauli::Y);
    CHECK(sx.sign == -1);
    PauliTerm sy = conjugate_clifford(term1(Pauli::Y), Gate::s(0));
    CHECK(sy.p.at(0) == Pauli::X);
    CHECK(sy.sign == 1);
    PauliTerm sz = conjugate_clifford(term1(Pauli::Z), Gate::s(0));
    CHECK(sz.p.at(0) == Pauli::Z);
    CHECK(sz.sign == 1);
    // Conjugating twice is conjugation by S² = Z: X -> -X, Y -> -Y.
    PauliTerm twice = conjugate_clifford(sx, Gate::s(0));
    CHECK(twice.p.at(0) == Pauli::X);
    CHECK(twice.sign == -1);
}

TEST_CASE("controlled-Z conjugation spreads Z onto the partner of an X") {
    Gate cz = Gate::cz(0, 1);
    PauliTerm xi = conjugate_clifford(term2(Pauli::X, Pauli::I), cz);
    CHECK(xi.p.at(0) == Pauli::X);
    CHECK(xi.p.at(1) == Pauli::Z);
    CHECK(xi.sign == 1);
    PauliTerm ix = conjugate_clifford(term2(Pauli::I, Pauli::X), cz);
    CHECK(ix.p.at(0) == Pauli::Z);
    CHECK(ix.p.at(1) == Pauli::X);
    CHECK(ix.sign == 1);
    PauliTerm zz = conjugate_clifford(term2(Pauli::Z, Pauli::Z), cz);
    CHECK(zz.p.at(0) == Pauli::Z);
    CHECK(zz.p.at(1) == Pauli::Z);
    CHECK(zz.sign == 1);
    PauliTerm xx = conjugate_clifford(term2(Pauli::X, Pauli::X), cz);
    CHECK(xx.p.at(0) == Pauli::Y);
    CHECK(xx.p.at(1) == Pauli::Y);
    CHECK(xx.sign == 1);
    PauliTerm xy = conjugate_clifford(term2(Pauli::X, Pauli::Y), cz);
    CHECK(xy.p.at(0) == Pauli::Y);
    CHECK(xy.p.at(1) == Pauli::X);
    CHECK(xy.sign == -1);
    PauliTerm yy = conjugate_clifford(term2(Pauli::Y, Pauli::Y), cz);
    CHECK(yy.p.at(0) == Pauli::X);
    CHECK(yy.p.at(1) == Pauli::X);
    CHECK(yy.sign == 1);
    // Untouched qubits pass through.
    PauliTerm far = term1(Pauli::Y);
    far.p.set(2, Pauli::X);
    PauliTerm out = conjugate_clifford(far, Gate::cz(1, 2));
    CHECK(out.p.at(0) == Pauli::Y);
}

TEST_CASE("conjugation rejects non-Clifford gates") {
    CHECK_THROWS_AS(conjugate_clifford(term1(Pauli::Z), Gate::t(0)), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_clifford(term1(Pauli::Z), Gate::x(0)), std::invalid_argument);
}

TEST_CASE("T transitions pass diagonals and split X and Y") {
    TBranches id = branch_t(term1(Pauli::I, 1, 2), 0);
    CHECK(id.count == 1);
    CHECK(id.terms[0].p.at(0) == Pauli::I);
    CHECK(id.terms[0].k == 2);
    TBranches z = branch_t(term1(Pauli::Z), 0);
    CHECK(z.count == 1);
    CHECK(z.terms[0].sign == 1);

    // Backward convention: t†xt = (x - y)/sqrt2, t†yt = (x + y)/sqrt2.
    TBranches x = branch_t(term1(Pauli::X), 0);
    CHECK(x.count == 2);
    CHECK(x.terms[0].p.at(0) == Pauli::X);
    CHECK(x.terms[0].sign == 1);
    CHECK(x.terms[0].k == 1);
    CHECK(x.terms[1].p.at(0) == Pauli::Y);
    CHECK(x.terms[1].sign == -1);
    CHECK(x.terms[1].k == 1);

    TBranches y = branch_t(term1(Pauli::Y, 1, 3), 0);
    CHECK(y.count == 2);
    CHECK(y.terms[0].p.at(0) == Pauli::X);
    CHECK(y.terms[0].sign == 1);
    CHECK(y.terms[0].k == 4);
    CHECK(y.terms[1].p.at(0) == Pauli::Y);
    CHECK(y.terms[1].sign == 1);
    CHECK(y.terms[1].k == 4);

    TBranches neg = branch_t(term1(Pauli::Y, -1), 0);
    CHECK(neg.terms[0].sign == -1);
    CHECK(neg.terms[1].sign == -1);
    TBranches negx = branch_t(term1(Pauli::X, -1), 0);
    CHECK(negx.terms[0].sign == -1);
    CHECK(negx.terms[1].sign == 1);

    // Branching on one qubit leaves the others alone.
    PauliTerm wide = term2(Pauli::Z, Pauli::X);
    TBranches w = branch_t(wide, 1);
    CHECK(w.count == 2);
    CHECK(w.terms[0].p.at(0) == Pauli::Z);
    CHECK(w.terms[1].p.at(0) == Pauli::Z);
}

TEST_CASE("single-qubit rules reproduce g†pg exactly") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const C2 i{0.0, 1.0};
    const M2 h_mat = {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    const M2 s_mat = {1, 0, 0, i};
    const M2 t_mat = {1, 0, 0, std::exp(i * (std::acos(-1.0) / 4.0))};

    for (auto [g, m] : {std::pair{Gate::h(0), h_mat}, std::pair{Gate::s(0), s_mat}}) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliTerm out = conjugate_clifford(term1(p), g);
            M2 got = mat_scale(pauli_mat(out.p.at(0)), static_cast<double>(out.sign));
            CHECK(mat_close(conj_by(m, pauli_mat(p)), got));
        }
    }
    for (Pauli p : {Pauli::X, Pauli::Y}) {
        TBranches br = branch_t(term1(p), 0);
        REQUIRE(br.count == 2);
        M2 got = {0, 0, 0, 0};
        for (int b = 0; b < 2; ++b) {
            got = mat_add(got, mat_scale(pauli_mat(br.terms[b].p.at(0)),
                                         static_cast<double>(br.terms[b].sign) * inv_sqrt2));
        }
        CHECK(mat_close(conj_by(t_mat, pauli_mat(p)), got));
    }
    for (Pauli p : {Pauli::I, Pauli::Z}) {
        TBranches br = branch_t(term1(p), 0);
        REQUIRE(br.count == 1);
        CHECK(mat_close(conj_by(t_mat, pauli_mat(p)), pauli_mat(p)));
    }
}

TEST_CASE("z expectations of hand-checked circuits") {
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\n")) == RootTwoValue::one());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\ns 0\n")) == RootTwoValue::one());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nt 0\n")) == RootTwoValue::one());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nh 0\n")) == RootTwoValue::zero());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nh 0\nh 0\n")) == RootTwoValue::one());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nh 0\ns 0\nh 0\n")) ==
          RootTwoValue::zero());
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nh 0\nt 0\nh 0\n")) ==
          RootTwoValue::inv_sqrt2_pow(1, 1));
    // T² = S: opposite branches cancel exactly and the Y part survives.
    CHECK(z_expectation(parse_circuit("qubits 1\ngateset ct\nt 0\nt 0\nh 0\n")) ==
          RootTwoValue::zero());
}

TEST_CASE("the six-gate interference circuit lands on one half") {
    Circuit c = parse_circuit(
        "qubits 3\n"
        "gateset ct\n"
        "h 0\n"
        "t 0\n"
        "cz 0 1\n"
        "h 0\n"
        "t 0\n"
        "h 0\n");
    RootTwoValue ze = z_expectation(c);
    CHECK(ze == RootTwoValue::dyadic(1, 1));
    CHECK(ze.is_rational());
    CHECK(ze.to_rational() == Rational(1, 2));
    RootTwoValue pa = acceptance_probability(c);
    CHECK(pa == RootTwoValue::dyadic(3, 2));
    CHECK(pa.to_rational() == Rational(3, 4));
    CHECK(pa.str() == "(3 + 0·√2)/2^2");
}

TEST_CASE("random CT circuits agree with the statevector oracle") {
    Rng rng(0x7a57e);
    for (int trial = 0; trial < 25; ++trial) {
        unsigned width = 1 + static_cast<unsigned>(rng.below(4));
        Circuit c = random_ct_circuit(rng, width, 4 + static_cast<unsigned>(rng.below(8)), 8);
        RootTwoValue ze = z_expectation(c);
        CHECK(std::abs(ze.to_double() - z1_expectation(c)) <= 1e-9);
        RootTwoValue pa = acceptance_probability(c);
        CHECK(RootTwoValue::zero() <= pa);
        CHECK(pa <= RootTwoValue::one());
    }
}

TEST_CASE("term budget and input guards") {
    // Reverse-order propagation meets the H first, so the later T splits.
    Circuit split = parse_circuit("qubits 1\ngateset ct\nt 0\nh 0\n");
    CHECK_THROWS_AS(z_expectation(split, 1), BudgetError);
    CHECK(z_expectation(split) == RootTwoValue::zero());

    CHECK_THROWS_AS(z_expectation(parse_circuit("qubits 1\ngateset ch\nh 0\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(z_expectation(Circuit(65, GateSet::CT)), std::invalid_argument);
}
