#include "rqp/scoring.h"

#include <sstream>

#include "rqp/circuit.h"  // outcome_bits / parse_outcome_bits

namespace rqp {

ExactDist point_mass(unsigned k, uint64_t z) {
    ExactDist d;
    d.k = k;
    d.probs.assign(std::size_t{1} << k, Rational(0));
    d.probs.at(z) = 1;
    return d;
}

FloatDist to_float(const ExactDist& d) {
    FloatDist f;
    f.k = d.k;
    f.probs.reserve(d.probs.size());
    for (const Rational& p : d.probs) {
        f.probs.push_back(to_double(p));
    }
    return f;
}

ExactDist parse_distribution(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_k = false;
    unsigned k = 0;
    ExactDist d;
    std::vector<bool> seen;

    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.resize(hash);
        }
        std::istringstream line(raw);
        std::string first;
        if (!(line >> first)) {
            continue;
        }
        if (!have_k) {
            if (first != "k") {
                throw ParseError(lineno, "expected header 'k <int>'");
            }
            if (!(line >> k) || k == 0 || k > 20) {
                throw ParseError(lineno, "outcome width must be in 1..20");
            }
            have_k = true;
            d.k = k;
            d.probs.assign(std::size_t{1} << k, Rational(0));
            seen.assign(std::size_t{1} << k, false);
            continue;
        }
        std::string prob_text;
        if (!(line >> prob_text)) {
            throw ParseError(lineno, "expected '<z bits> <prob>'");
        }
        std::string trailing;
        if (line >> trailing) {
            throw ParseError(lineno, "unexpected trailing token '" + trailing + "'");
        }
        uint64_t z;
        try {
            z = parse_outcome_bits(first, k);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        if (seen[z]) {
            throw ParseError(lineno, "duplicate entry for outcome " + first);
        }
        seen[z] = true;
        try {
            d.probs[z] = parse_rational(prob_text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!have_k) {
        throw ParseError(lineno, "missing 'k <int>' header");
    }
    for (std::size_t z = 0; z < seen.size(); ++z) {
        if (!seen[z]) {
            throw ParseError(lineno, "missing entry for outcome " + outcome_bits(z, k));
        }
    }
    d.validate();
    return d;
}

std::string print_distribution(const ExactDist& d) {
    std::ostringstream out;
    out << "k " << d.k << "\n";
    for (std::size_t z = 0; z < d.probs.size(); ++z) {
        out << outcome_bits(z, d.k) << " " << to_string(d.probs[z]) << "\n";
    }
    return out.str();
}

}  // namespace rqp
