#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "beecol/bitvector.hpp"

namespace beecol {

// Absolute tolerance when checking a cost against a known optimum. Registry
// optima carry two decimals, so anything within a cent counts as a hit.
inline constexpr double kOptimumTolerance = 1e-2;

// Problem abstraction the engine runs against: a dimension, a deterministic
// side-effect-free cost function, an optional known optimum, and an optional
// feasibility repair applied to candidates before evaluation.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual double evaluate(const BitVector& x) const = 0;
    virtual std::optional<double> optimum() const { return std::nullopt; }

    // Returns true if the position was modified to restore feasibility.
    virtual bool repair(BitVector&) const { return false; }
};

// Count of zero bits; optimum 0 at the all-ones vector.
inline double onemax(const BitVector& x) {
    return static_cast<double>(x.size() - x.count_ones());
}

// Sanity problem for engine tests and short benchmark runs.
class OneMaxProblem final : public Problem {
public:
    explicit OneMaxProblem(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw std::invalid_argument("OneMaxProblem: dimension must be >= 1");
    }

    std::string_view name() const override { return "onemax"; }
    std::size_t dimension() const override { return dim_; }
    double evaluate(const BitVector& x) const override { return onemax(x); }
    std::optional<double> optimum() const override { return 0.0; }

private:
    std::size_t dim_;
};

}  // namespace beecol
