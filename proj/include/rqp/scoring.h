#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rqp/exact.h"

namespace rqp {

/// Probability distribution over k-bit outcomes, index bit i = qubit i.
/// The scalar type is part of the value: Rational for exact identities,
/// double for Monte Carlo throughput. The two are never mixed silently.
template <typename T>
struct Distribution {
    unsigned k = 0;
    std::vector<T> probs;

    std::size_t size() const { return probs.size(); }

    /// Throws std::invalid_argument unless entries are nonnegative and sum
    /// to 1 (exactly for Rational, within 1e-12 for double).
    void validate() const;

    bool operator==(const Distribution&) const = default;
};

using ExactDist = Distribution<Rational>;
using FloatDist = Distribution<double>;

template <typename T>
Distribution<T> uniform_distribution(unsigned k);

ExactDist point_mass(unsigned k, uint64_t z);
FloatDist to_float(const ExactDist& d);

/// Brier score S(z, q) = 2·q_z - sum(q²) - 1, in [-2, 0]; 0 only at the
/// point mass on z.
template <typename T>
T brier_score(uint64_t z, const Distribution<T>& q);

/// Payment for one machine outcome: w=1 -> S+2, w=2 -> 2-S, w=3 -> 2.
template <typename T>
T reward_for_outcome(int w, uint64_t z, const Distribution<T>& q);

/// sum_z p_z·S(z,p) - sum_z p_z·S(z,q). Over rationals this provably
/// equals sum_z (p_z - q_z)²; both routes are evaluated and the equality
/// is checked before returning.
template <typename T>
T properness_gap(const Distribution<T>& p, const Distribution<T>& q);

/// S(z, q) for every z, sharing one sum-of-squares pass.
template <typename T>
std::vector<T> brier_scores_all(const Distribution<T>& q);

/// Distribution text format: "k <int>", then 2^k lines "<z bits> <prob>"
/// (probabilities as fractions or exact decimals). Lines may come in any
/// order but must cover every outcome once.
ExactDist parse_distribution(const std::string& text);
std::string print_distribution(const ExactDist& d);

// --- template bodies ---

template <typename T>
void Distribution<T>::validate() const {
    if (k > 20) {
        throw std::invalid_argument("outcome width cap is 20 bits");
    }
    if (probs.size() != (std::size_t{1} << k)) {
        throw std::invalid_argument("distribution needs 2^k entries");
    }
    T sum{};
    for (const T& p : probs) {
        if (p < T{}) {
            throw std::invalid_argument("negative probability entry");
        }
        sum += p;
    }
    if constexpr (std::is_same_v<T, Rational>) {
        if (sum != 1) {
            throw std::invalid_argument("probabilities sum to " + to_string(sum) + ", not 1");
        }
    } else {
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
        }
    }
}

template <typename T>
Distribution<T> uniform_distribution(unsigned k) {
    Distribution<T> d;
    d.k = k;
    if constexpr (std::is_same_v<T, Rational>) {
        d.probs.assign(std::size_t{1} << k, pow2_inv(k));
    } else {
        d.probs.assign(std::size_t{1} << k, std::ldexp(1.0, -static_cast<int>(k)));
    }
    return d;
}

template <typename T>
T brier_score(uint64_t z, const Distribution<T>& q) {
    if (z >= q.size()) {
        throw std::invalid_argument("outcome index out of range");
    }
    T sum_sq{};
    for (const T& p : q.probs) {
        sum_sq += p * p;
    }
    return 2 * q.probs[z] - sum_sq - 1;
}

template <typename T>
T reward_for_outcome(int w, uint64_t z, const Distribution<T>& q) {
    switch (w) {
        case 1: return brier_score(z, q) + 2;
        case 2: return T{2} - brier_score(z, q);
        case 3: return T{2};
        default: throw std::invalid_argument("machine outcome must be 1, 2, or 3");
    }
}

template <typename T>
std::vector<T> brier_scores_all(const Distribution<T>& q) {
    T sum_sq{};
    for (const T& p : q.probs) {
        sum_sq += p * p;
    }
    std::vector<T> scores;
    scores.reserve(q.size());
    for (const T& p : q.probs) {
        scores.push_back(2 * p - sum_sq - 1);
    }
    return scores;
}

template <typename T>
T properness_gap(const Distribution<T>& p, const Distribution<T>& q) {
    if (p.k != q.k) {
        throw std::invalid_argument("distribution widths differ");
    }
    T self{}, cross{}, squares{};
    for (std::size_t z = 0; z < p.size(); ++z) {
        self += p.probs[z] * brier_score(static_cast<uint64_t>(z), p);
        cross += p.probs[z] * brier_score(static_cast<uint64_t>(z), q);
        T diff = p.probs[z] - q.probs[z];
        squares += diff * diff;
    }
    T gap = self - cross;
    if constexpr (std::is_same_v<T, Rational>) {
        if (gap != squares) {
            throw std::logic_error("scoring identity violated: gap " + to_string(gap) +
                                   " vs squared distance " + to_string(squares));
        }
    }
    return gap;
}

}  // namespace rqp
