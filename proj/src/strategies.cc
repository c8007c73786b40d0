#include "rqp/strategies.h"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rqp/hpath.h"
#include "rqp/parallel.h"
#include "rqp/protocol.h"
#include "rqp/statevector.h"

namespace rqp {

namespace {

[[noreturn]] void bad_selector(const std::string& selector, const std::string& why) {
    throw std::invalid_argument("strategy '" + selector + "': " + why);
}

double parse_double_param(const std::string& selector, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        bad_selector(selector, "'" + value + "' is not a number");
    }
    if (used != value.size()) {
        bad_selector(selector, "'" + value + "' is not a number");
    }
    return out;
}

}  // namespace

ServerStrategy parse_strategy(const std::string& selector) {
    ServerStrategy s;
    s.selector = selector;

    std::string head = selector;
    std::string params;
    if (auto colon = selector.find(':'); colon != std::string::npos) {
        head = selector.substr(0, colon);
        params = selector.substr(colon + 1);
    }

    bool saw_eps = false, saw_delta = false, saw_z = false, saw_amt = false;
    std::size_t pos = 0;
    while (pos < params.size()) {
        std::size_t comma = params.find(',', pos);
        std::string item = params.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? params.size() : comma + 1;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            bad_selector(selector, "expected key=value, got '" + item + "'");
        }
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "eps") {
            s.eps = parse_double_param(selector, value);
            saw_eps = true;
        } else if (key == "delta") {
            s.delta = parse_double_param(selector, value);
            saw_delta = true;
        } else if (key == "z") {
            if (value.empty() || value.find_first_not_of("01") != std::string::npos) {
                bad_selector(selector, "z must be a bit string");
            }
            s.zstar_bits = value;
            saw_z = true;
        } else if (key == "amt") {
            try {
                s.amount = parse_rational(value);
            } catch (const std::invalid_argument& e) {
                bad_selector(selector, e.what());
            }
            saw_amt = true;
        } else {
            bad_selector(selector, "unknown parameter '" + key + "'");
        }
    }

    auto require = [&](bool have, const char* what) {
        if (!have) {
            bad_selector(selector, std::string("missing parameter ") + what);
        }
    };
    auto forbid_all_but = [&](bool eps_ok, bool z_ok, bool amt_ok) {
        if ((saw_eps || saw_delta) && !eps_ok) {
            bad_selector(selector, "eps/delta do not apply here");
        }
        if (saw_z && !z_ok) {
            bad_selector(selector, "z does not apply here");
        }
        if (saw_amt && !amt_ok) {
            bad_selector(selector, "amt does not apply here");
        }
    };

    if (head == "honest-exact") {
        s.tag = StrategyTag::HonestExact;
        forbid_all_but(false, false, false);
    } else if (head == "honest-sampling") {
        s.tag = StrategyTag::HonestSampling;
        forbid_all_but(true, false, false);
        require(saw_eps, "eps");
        require(saw_delta, "delta");
    } else if (head == "flip") {
        s.tag = StrategyTag::Flip;
        forbid_all_but(false, false, false);
    } else if (head == "uniform") {
        s.tag = StrategyTag::UniformReport;
        forbid_all_but(false, false, false);
    } else if (head == "point") {
        s.tag = StrategyTag::PointMass;
        forbid_all_but(false, true, false);
        require(saw_z, "z");
    } else if (head == "shift") {
        s.tag = StrategyTag::Shifted;
        forbid_all_but(false, true, true);
        require(saw_z, "z");
        require(saw_amt, "amt");
    } else {
        bad_selector(selector, "unknown strategy name '" + head + "'");
    }
    return s;
}

ExactDist honest_exact_report(const Circuit& v, unsigned k) {
    return exact_output_distribution(v, k);
}

uint64_t sampling_shots(unsigned k, double eps, double delta) {
    double t = std::log(2.0 * std::ldexp(1.0, static_cast<int>(k)) / delta) / (2.0 * eps * eps);
    return static_cast<uint64_t>(std::ceil(t));
}

ExactDist honest_sampling_report(const Circuit& v, unsigned k, double eps, double delta, Rng& rng) {
    if (k == 0 || k > v.width || k > K_MAX) {
        throw std::invalid_argument("k must be in [1, min(width, 20)]");
    }
    if (!(eps > 0.0) || std::ldexp(eps, static_cast<int>(k)) > 0.5) {
        throw std::invalid_argument("sampling needs 0 < eps and 2^k*eps <= 1/2");
    }
    if (!(delta > 0.0) || delta >= 1.0) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    const uint64_t shots = sampling_shots(k, eps, delta);

    // One statevector pass gives the measurement distribution; shots are
    // then draws against its cumulative table.
    std::vector<double> marg = marginal_probs(simulate(v), k);
    std::vector<double> cdf(marg.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < marg.size(); ++i) {
        acc += marg[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    const std::size_t nz = std::size_t{1} << k;
    const uint64_t base = rng.word();
    std::vector<uint64_t> hits(nz, 0);
    auto batch = [&](std::size_t z) {
        // Every outcome gets its own shot batch and its own seed stream,
        // so results do not depend on worker count or schedule.
        Rng rz(derive_seed(base, z));
        uint64_t count = 0;
        for (uint64_t t = 0; t < shots; ++t) {
            double u = rz.uniform();
            std::size_t idx = static_cast<std::size_t>(
                std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            count += (idx < nz ? idx : nz - 1) == z;
        }
        hits[z] = count;
    };

    unsigned workers = worker_count(nz);
    if (workers <= 1) {
        for (std::size_t z = 0; z < nz; ++z) {
            batch(z);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t z = w; z < nz; z += workers) {
                    batch(z);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    uint64_t total = 0;
    for (uint64_t h : hits) {
        total += h;
    }
    if (total == 0) {
        throw std::runtime_error("every outcome estimate came back zero; raise the shot budget");
    }
    ExactDist d;
    d.k = k;
    d.probs.reserve(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        d.probs.emplace_back(hits[z], total);
    }
    d.validate();
    return d;
}

int correct_decision_bit(const Circuit& v) {
    return acceptance_prob(v) >= Rational(1, 2) ? 1 : 0;
}

ExactDist make_report(const ServerStrategy& s, const Circuit& v, unsigned k, Rng& rng) {
    switch (s.tag) {
        case StrategyTag::HonestExact:
            return honest_exact_report(v, k);
        case StrategyTag::HonestSampling:
            return honest_sampling_report(v, k, s.eps, s.delta, rng);
        case StrategyTag::Flip:
            throw std::invalid_argument("flip sends a decision bit, not a distribution");
        case StrategyTag::UniformReport:
            return uniform_distribution<Rational>(k);
        case StrategyTag::PointMass:
            return point_mass(k, parse_outcome_bits(s.zstar_bits, k));
        case StrategyTag::Shifted: {
            uint64_t zs = parse_outcome_bits(s.zstar_bits, k);
            ExactDist q = honest_exact_report(v, k);
            Rational rest = 1 - q.probs[zs];
            if (s.amount < 0 || s.amount > rest) {
                throw std::invalid_argument("shift amount " + to_string(s.amount) +
                                            " does not leave a valid distribution");
            }
            q.probs[zs] += s.amount;
            if (rest != 0) {
                Rational scale = (rest - s.amount) / rest;
                for (std::size_t z = 0; z < q.size(); ++z) {
                    if (z != zs) {
                        q.probs[z] *= scale;
                    }
                }
            }
            q.validate();
            return q;
        }
    }
    throw std::logic_error("unhandled strategy tag");
}

}  // namespace rqp
