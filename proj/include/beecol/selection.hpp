#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "beecol/bitvector.hpp"
#include "beecol/rng.hpp"

namespace beecol {

// Nectar transform of an objective value: strictly decreasing on cost >= 0,
// strictly increasing in |cost| below zero, always positive.
inline double fitness(double cost) {
    if (!std::isfinite(cost)) throw std::invalid_argument("fitness: cost must be finite");
    return cost >= 0.0 ? 1.0 / (1.0 + cost) : 1.0 + std::abs(cost);
}

// p_i = Fit_i / sum Fit_j, order preserved.
inline std::vector<double> selection_probabilities(std::span<const double> fitnesses) {
    if (fitnesses.empty())
        throw std::invalid_argument("selection_probabilities: empty fitness list");
    double total = 0.0;
    for (double f : fitnesses) {
        if (!(f > 0.0))
            throw std::invalid_argument("selection_probabilities: fitness values must be > 0");
        total += f;
    }
    std::vector<double> probs(fitnesses.size());
    for (std::size_t i = 0; i < fitnesses.size(); ++i) probs[i] = fitnesses[i] / total;
    return probs;
}

// Fitness-proportional index draw over a normalized distribution. With
// `exclude` set, the remaining mass is renormalized so the excluded index is
// never returned.
template <UniformRng R>
std::size_t roulette_select(std::span<const double> probabilities,
                            std::optional<std::size_t> exclude, R& rng) {
    if (probabilities.empty())
        throw std::invalid_argument("roulette_select: empty distribution");
    if (exclude) {
        if (*exclude >= probabilities.size())
            throw std::invalid_argument("roulette_select: exclude index out of range");
        if (probabilities.size() < 2)
            throw std::invalid_argument("roulette_select: no index left after exclusion");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        if (!exclude || i != *exclude) total += probabilities[i];
    if (!(total > 0.0))
        throw std::invalid_argument("roulette_select: no selectable probability mass");

    const double u = rng.uniform01() * total;
    double cum = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (exclude && i == *exclude) continue;
        cum += probabilities[i];
        last = i;
        if (u < cum) return i;
    }
    return last;  // floating-point leftover lands on the final candidate
}

// Random binary position: each bit is 0 when its draw falls below 0.5, else 1.
template <UniformRng R>
BitVector bernoulli_init(std::size_t dim, R& rng) {
    if (dim == 0) throw std::invalid_argument("bernoulli_init: dimension must be >= 1");
    BitVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v.set(i, rng.uniform01() >= 0.5);
    return v;
}

}  // namespace beecol
