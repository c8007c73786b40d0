#include "rqp/random_circuits.h"

#include <algorithm>

namespace rqp {

namespace {

uint32_t pick(Rng& rng, unsigned width) { return static_cast<uint32_t>(rng.below(width)); }

uint32_t pick_avoiding(Rng& rng, unsigned width, uint32_t a, uint32_t b) {
    for (;;) {
        uint32_t q = pick(rng, width);
        if (q != a && q != b) {
            return q;
        }
    }
}

void check_width(unsigned width) {
    if (width == 0 || width > 60) {
        throw std::invalid_argument("generator width must be in [1, 60]");
    }
}

}  // namespace

Circuit random_ch_circuit(Rng& rng, unsigned width, unsigned gates, unsigned max_h) {
    check_width(width);
    Circuit c;
    c.width = width;
    c.gate_set = GateSet::CH;
    unsigned h_used = 0;
    for (unsigned i = 0; i < gates; ++i) {
        unsigned roll = static_cast<unsigned>(rng.below(8));
        if (roll <= 2 && h_used < max_h) {
            c.append(Gate::h(pick(rng, width)));
            ++h_used;
        } else if ((roll == 4 || roll == 5) && width >= 2) {
            uint32_t tgt = pick(rng, width);
            c.append(Gate::cx(pick_avoiding(rng, width, tgt, tgt), tgt));
        } else if (roll == 6 && width >= 3) {
            uint32_t tgt = pick(rng, width);
            uint32_t c1 = pick_avoiding(rng, width, tgt, tgt);
            uint32_t c2 = pick_avoiding(rng, width, tgt, c1);
            c.append(Gate::ccx(c1, c2, tgt));
        } else if (roll == 7 && width >= 2) {
            // Mixed-polarity controlled flip keeps the polarity handling
            // exercised by every randomized suite.
            uint32_t tgt = pick(rng, width);
            uint32_t c1 = pick_avoiding(rng, width, tgt, tgt);
            std::vector<Control> ctrls{{c1, rng.coin()}};
            if (width >= 3 && rng.coin()) {
                ctrls.push_back({pick_avoiding(rng, width, tgt, c1), rng.coin()});
            }
            c.append(Gate::mcx(std::move(ctrls), tgt));
        } else {
            c.append(Gate::x(pick(rng, width)));
        }
    }
    return c;
}

Circuit random_ct_circuit(Rng& rng, unsigned width, unsigned gates, unsigned max_t) {
    check_width(width);
    Circuit c;
    c.width = width;
    c.gate_set = GateSet::CT;
    unsigned t_used = 0;
    for (unsigned i = 0; i < gates; ++i) {
        unsigned roll = static_cast<unsigned>(rng.below(8));
        if (roll <= 2 && t_used < max_t) {
            c.append(Gate::t(pick(rng, width)));
            ++t_used;
        } else if (roll <= 4) {
            c.append(Gate::h(pick(rng, width)));
        } else if (roll == 5) {
            c.append(Gate::s(pick(rng, width)));
        } else if (width >= 2) {
            uint32_t a = pick(rng, width);
            c.append(Gate::cz(a, pick_avoiding(rng, width, a, a)));
        } else {
            c.append(Gate::h(pick(rng, width)));
        }
    }
    return c;
}

ExactDist random_exact_distribution(Rng& rng, unsigned k) {
    ExactDist d;
    d.k = k;
    const std::size_t n = std::size_t{1} << k;
    std::vector<uint64_t> weights(n);
    uint64_t total = 0;
    while (total == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] = rng.draw_bits(16);
            total += weights[i];
        }
    }
    d.probs.reserve(n);
    for (uint64_t w : weights) {
        d.probs.emplace_back(w, total);
    }
    d.validate();
    return d;
}

DecisionInstance random_promise_instance(Rng& rng, unsigned width, bool want_yes) {
    for (unsigned attempt = 0; attempt < 10000; ++attempt) {
        Circuit c = random_ch_circuit(rng, width, 6, 3);
        Rational p = acceptance_prob(c);
        if (want_yes && p >= Rational(2, 3)) {
            return {std::move(c), Promise::Yes};
        }
        if (!want_yes && p <= Rational(1, 3)) {
            return {std::move(c), Promise::No};
        }
    }
    throw std::runtime_error("no promise instance found within the attempt cap");
}

}  // namespace rqp
