#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "beecol/bitvector.hpp"
#include "beecol/problem.hpp"

namespace beecol::problems {

// Error raised by the OR-Library reader; the message names the offending
// line and token.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Result of evaluating an open/closed facility vector: total cost plus the
// serving facility chosen for each customer.
struct Evaluation {
    double cost = 0.0;
    std::vector<std::uint32_t> assignment;  // assignment[j] = open facility serving customer j
};

// Immutable uncapacitated facility location instance: per-facility set-up
// costs and an m x n shipment cost matrix. Shipment costs are stored
// customer-major and each customer additionally keeps its facilities ranked
// by (cost, index) so evaluation only scans until the first open facility.
class UflpInstance {
public:
    UflpInstance(std::string name, std::size_t facilities, std::size_t customers,
                 std::vector<double> setup, std::vector<double> ship_by_customer,
                 std::optional<double> optimum = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    std::size_t facility_count() const noexcept { return m_; }
    std::size_t customer_count() const noexcept { return n_; }
    std::optional<double> optimum() const noexcept { return optimum_; }

    double setup(std::size_t facility) const { return setup_[facility]; }
    double ship(std::size_t facility, std::size_t customer) const {
        return ship_[customer * m_ + facility];
    }

    // Facility indices for one customer, cheapest first; ties ordered by
    // ascending facility index.
    const std::uint32_t* ranked(std::size_t customer) const { return &rank_[customer * m_]; }

    friend bool operator==(const UflpInstance& a, const UflpInstance& b) {
        return a.name_ == b.name_ && a.m_ == b.m_ && a.n_ == b.n_ && a.setup_ == b.setup_ &&
               a.ship_ == b.ship_ && a.optimum_ == b.optimum_;
    }

private:
    std::string name_;
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<double> setup_;  // m entries
    std::vector<double> ship_;   // n * m entries, customer-major
    std::vector<std::uint32_t> rank_;
    std::optional<double> optimum_;
};

// Reads the OR-Library "cap" format:
//   line 1:        m n
//   next m lines:  capacity fixed_cost   (capacity is a number or the literal
//                                         word "capacity"; ignored either way)
//   per customer:  demand followed by m shipment costs, free-form whitespace
// Raises ParseError with line/position details on malformed input.
UflpInstance parse_orlib(std::istream& in, std::string name = {},
                         std::optional<double> optimum = std::nullopt);

// Writes an instance back in the same format (round-trips through
// parse_orlib). Demands are not part of the model and are emitted as 0.
void write_orlib(const UflpInstance& inst, std::ostream& out);

// Total cost of the open set in x plus cheapest-open shipment per customer;
// assignment ties break toward the lowest facility index. Throws
// std::domain_error when x opens nothing (callers repair first) and
// std::invalid_argument on a length mismatch.
Evaluation evaluate_uflp(const UflpInstance& inst, const BitVector& x);

// For an all-zero vector, opens the single facility with the smallest
// setup + total-shipment cost (ties toward the lowest index).
BitVector repair_all_closed(const UflpInstance& inst, const BitVector& x);

// The fifteen benchmark instances with their published optimal costs.
const std::map<std::string, double>& optima_registry();

// Problem adapter over a shared instance; repairs all-closed candidates.
class UflpProblem final : public Problem {
public:
    explicit UflpProblem(std::shared_ptr<const UflpInstance> inst);

    std::string_view name() const override { return inst_->name(); }
    std::size_t dimension() const override { return inst_->facility_count(); }
    double evaluate(const BitVector& x) const override { return evaluate_uflp(*inst_, x).cost; }
    std::optional<double> optimum() const override { return inst_->optimum(); }
    bool repair(BitVector& x) const override;

    const UflpInstance& instance() const noexcept { return *inst_; }

private:
    std::shared_ptr<const UflpInstance> inst_;
};

}  // namespace beecol::problems
