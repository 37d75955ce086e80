#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "beecol/bitvector.hpp"
#include "beecol/selection.hpp"

namespace beecol {

// One candidate solution with its cached objective value and quality. The
// fitness field always equals fitness(cost); construct through
// make_food_source to keep the pair consistent.
struct FoodSource {
    BitVector position;
    double cost = 0.0;
    double fitness = 0.0;
    std::uint64_t trial = 0;  // consecutive rejected candidates since last acceptance
};

inline FoodSource make_food_source(BitVector position, double cost) {
    FoodSource s;
    s.position = std::move(position);
    s.cost = cost;
    s.fitness = fitness(cost);
    s.trial = 0;
    return s;
}

// Population state of a single run.
struct Colony {
    std::vector<FoodSource> sources;
    FoodSource best;        // best-ever across all evaluated candidates
    std::uint64_t t = 0;    // current iteration, 0-based
    std::uint64_t evals = 0;  // cumulative objective evaluations
};

}  // namespace beecol
