#include <doctest.h>

#include <cmath>

#include "rqp/random_circuits.h"
#include "rqp/rng.h"
#include "rqp/scoring.h"

using namespace rqp;

namespace {

ExactDist dist1(const Rational& p0, const Rational& p1) {
    ExactDist d;
    d.k = 1;
    d.probs = {p0, p1};
    return d;
}

}  // namespace

TEST_CASE("uniform and point-mass constructors") {
    ExactDist u = uniform_distribution<Rational>(3);
    CHECK(u.k == 3);
    REQUIRE(u.probs.size() == 8);
    for (const Rational& p : u.probs) {
        CHECK(p == Rational(1, 8));
    }
    u.validate();

    FloatDist uf = uniform_distribution<double>(2);
    for (double p : uf.probs) {
        CHECK(p == 0.25);
    }
    uf.validate();

    ExactDist pm = point_mass(2, 3);
    CHECK(pm.probs[3] == 1);
    CHECK(pm.probs[0] == 0);
    pm.validate();

    FloatDist f = to_float(dist1(Rational(1, 4), Rational(3, 4)));
    CHECK(f.probs[0] == 0.25);
    CHECK(f.probs[1] == 0.75);
}

TEST_CASE("validation rejects malformed distributions") {
    CHECK_THROWS_AS(dist1(Rational(3, 5), Rational(1, 5)).validate(), std::invalid_argument);
    CHECK_THROWS_AS(dist1(Rational(3, 2), Rational(-1, 2)).validate(), std::invalid_argument);
    ExactDist wrong_size;
    wrong_size.k = 2;
    wrong_size.probs = {1, 0, 0};
    CHECK_THROWS_AS(wrong_size.validate(), std::invalid_argument);
    ExactDist too_wide;
    too_wide.k = 21;
    CHECK_THROWS_AS(too_wide.validate(), std::invalid_argument);
    FloatDist off;
    off.k = 1;
    off.probs = {0.6, 0.5};
    CHECK_THROWS_AS(off.validate(), std::invalid_argument);
}

TEST_CASE("scores of named reports") {
    ExactDist u1 = uniform_distribution<Rational>(1);
    CHECK(brier_score(0, u1) == Rational(-1, 2));
    CHECK(brier_score(1, u1) == Rational(-1, 2));
    ExactDist u2 = uniform_distribution<Rational>(2);
    CHECK(brier_score(0, u2) == Rational(-3, 4));
    ExactDist pm = point_mass(1, 0);
    CHECK(brier_score(0, pm) == Rational(0));
    CHECK(brier_score(1, pm) == Rational(-2));
    CHECK(brier_score(0, dist1(Rational(3, 4), Rational(1, 4))) == Rational(-1, 8));
    CHECK_THROWS_AS(brier_score(2, u1), std::invalid_argument);
}

TEST_CASE("scores stay within their band and peak only at the point mass") {
    Rng rng(0xb51e);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned k = 1 + static_cast<unsigned>(rng.below(3));
        ExactDist q = random_exact_distribution(rng, k);
        for (uint64_t z = 0; z < q.size(); ++z) {
            Rational s = brier_score(z, q);
            CHECK(s >= Rational(-2));
            CHECK(s <= Rational(0));
            if (s == 0) {
                CHECK(q.probs[z] == 1);
            }
        }
    }
}

TEST_CASE("per-outcome rewards") {
    ExactDist u1 = uniform_distribution<Rational>(1);
    CHECK(reward_for_outcome(1, 0, u1) == Rational(3, 2));
    CHECK(reward_for_outcome(2, 0, u1) == Rational(5, 2));
    CHECK(reward_for_outcome(3, 0, u1) == Rational(2));
    CHECK_THROWS_AS(reward_for_outcome(0, 0, u1), std::invalid_argument);
    CHECK_THROWS_AS(reward_for_outcome(4, 0, u1), std::invalid_argument);

    Rng rng(0x90d);
    for (int trial = 0; trial < 50; ++trial) {
        ExactDist q = random_exact_distribution(rng, 2);
        for (uint64_t z = 0; z < 4; ++z) {
            for (int w = 1; w <= 3; ++w) {
                Rational r = reward_for_outcome(w, z, q);
                CHECK(r >= Rational(0));
                CHECK(r <= Rational(4));
            }
        }
    }
}

TEST_CASE("the scores of every outcome share one pass") {
    ExactDist q = dist1(Rational(1, 8), Rational(7, 8));
    std::vector<Rational> all = brier_scores_all(q);
    REQUIRE(all.size() == 2);
    CHECK(all[0] == brier_score(0, q));
    CHECK(all[1] == brier_score(1, q));
}

TEST_CASE("strict properness gap on hand-checked pairs") {
    ExactDist truth = dist1(Rational(3, 4), Rational(1, 4));
    CHECK(properness_gap(truth, truth) == Rational(0));
    CHECK(properness_gap(truth, uniform_distribution<Rational>(1)) == Rational(1, 8));
    CHECK(properness_gap(dist1(1, 0), uniform_distribution<Rational>(1)) == Rational(1, 2));
    CHECK(properness_gap(dist1(1, 0), dist1(0, 1)) == Rational(2));
    CHECK_THROWS_AS(properness_gap(truth, uniform_distribution<Rational>(2)),
                    std::invalid_argument);
}

TEST_CASE("the gap equals the squared distance on random pairs") {
    Rng rng(0x6a9);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned k = 1 + static_cast<unsigned>(rng.below(4));
        ExactDist p = random_exact_distribution(rng, k);
        ExactDist q = random_exact_distribution(rng, k);
        // properness_gap verifies the algebraic identity internally and
        // throws std::logic_error if the two routes ever disagree.
        Rational gap = properness_gap(p, q);
        CHECK(gap >= Rational(0));
        CHECK((gap == 0) == (p.probs == q.probs));
    }
}

TEST_CASE("float scoring mirrors the exact identity to rounding") {
    Rng rng(0x3f10a7);
    for (int trial = 0; trial < 50; ++trial) {
        FloatDist p = to_float(random_exact_distribution(rng, 2));
        FloatDist q = to_float(random_exact_distribution(rng, 2));
        double squares = 0.0;
        for (std::size_t z = 0; z < p.probs.size(); ++z) {
            double diff = p.probs[z] - q.probs[z];
            squares += diff * diff;
        }
        CHECK(properness_gap(p, q) == doctest::Approx(squares).epsilon(1e-12));
    }
}

TEST_CASE("distribution files parse and print") {
    ExactDist d = parse_distribution("k 1\n0 1/4\n1 3/4\n");
    CHECK(d.k == 1);
    CHECK(d.probs[0] == Rational(1, 4));
    CHECK(d.probs[1] == Rational(3, 4));

    // Lines may arrive in any order, with comments and exact decimals.
    ExactDist e = parse_distribution(
        "# two-bit example\n"
        "k 2\n"
        "11 0.5\n"
        "00 1/8\n"
        "10 1/4\n"
        "01 1/8\n");
    CHECK(e.probs[0] == Rational(1, 8));
    CHECK(e.probs[1] == Rational(1, 4));  // bits 10: qubit 0 set
    CHECK(e.probs[2] == Rational(1, 8));
    CHECK(e.probs[3] == Rational(1, 2));

    CHECK(parse_distribution(print_distribution(e)) == e);
    CHECK(print_distribution(d) == "k 1\n0 1/4\n1 3/4\n");
}

TEST_CASE("distribution files are validated line by line") {
    CHECK_THROWS_AS(parse_distribution(""), ParseError);
    CHECK_THROWS_AS(parse_distribution("0 1/2\n1 1/2\n"), ParseError);       // header first
    CHECK_THROWS_AS(parse_distribution("k 0\n"), ParseError);                // bad width
    CHECK_THROWS_AS(parse_distribution("k 21\n"), ParseError);               // bad width
    CHECK_THROWS_AS(parse_distribution("k 1\n0 1/2\n"), ParseError);         // missing outcome
    CHECK_THROWS_AS(parse_distribution("k 1\n0 1/2\n0 1/2\n"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_distribution("k 1\n0 1/2\n1 1/2 x\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("k 1\n0 abc\n1 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_distribution("k 1\n2 1/2\n1 1/2\n"), ParseError);  // bad bits
    // Entries that parse but do not sum to one fail the final validation.
    CHECK_THROWS_AS(parse_distribution("k 1\n0 1/2\n1 1/3\n"), std::invalid_argument);
}
