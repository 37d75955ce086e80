#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "beecol/colony.hpp"
#include "beecol/operators.hpp"
#include "beecol/problem.hpp"
#include "beecol/rng.hpp"

namespace beecol {

enum class Variant { ibinabc, binabc, disabc, abcbin };

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view s);

// Full parameterization of one run. max_iterations defaults to
// budget / (2 * colony_size): each iteration spends one candidate evaluation
// per source in each of the two improvement phases.
struct EngineConfig {
    std::size_t colony_size = 20;                    // N
    std::uint64_t budget = 80'000;                   // max objective evaluations
    std::optional<std::uint64_t> max_iterations;     // t_max; derived when unset
    std::uint64_t limit = 1;                         // scout trigger threshold
    Variant variant = Variant::ibinabc;
    double q_start = 0.3;
    double q_end = 0.1;
    std::uint32_t alpha = 2;
    ops::ThetaMode theta_mode = ops::ThetaMode::probabilistic;
    double lower_bound = 0.0;  // continuous box, mapping variant only
    double upper_bound = 2.0;
    std::uint64_t seed = 1;

    std::uint64_t resolved_t_max() const {
        return max_iterations ? *max_iterations : budget / (2 * colony_size);
    }

    // Throws std::invalid_argument when the configuration cannot drive a run
    // on a problem of the given dimension.
    void validate(std::size_t dimension) const;
};

struct TracePoint {
    std::uint64_t evals = 0;
    double best_cost = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
    double best_cost = 0.0;
    BitVector best_position;
    std::uint64_t evals_used = 0;
    bool hit = false;  // within kOptimumTolerance of the known optimum
    std::vector<TracePoint> trace;
};

// Optional instrumentation; every callback fires synchronously inside the
// run loop.
class RunObserver {
public:
    struct CandidateEvent {
        std::uint64_t iteration = 0;
        bool onlooker = false;          // employed phase otherwise
        std::size_t source_index = 0;
        std::uint64_t bit_budget = 0;   // positions the operator may touch (0 = unbounded)
        std::uint64_t hamming = 0;      // distance between candidate and its source
        bool accepted = false;
        std::uint64_t trial_after = 0;
        double candidate_cost = 0.0;
        std::uint64_t evals = 0;        // after this evaluation
    };

    virtual ~RunObserver() = default;
    virtual void on_candidate(const CandidateEvent&) {}
    virtual void on_scout(std::size_t /*source_index*/) {}
    virtual void on_iteration(std::uint64_t /*t*/, std::uint64_t /*evals*/,
                              double /*best_cost*/) {}
};

// Executes the full colony loop: random initialization, employed and
// onlooker improvement phases with roulette neighbor selection, at most one
// scout replacement per iteration, and best-ever memorization. Stops when
// the evaluation budget is exhausted or t_max iterations complete.
RunResult run(const Problem& problem, const EngineConfig& config,
              RunObserver* observer = nullptr);

// Greedy one-to-one replacement: the candidate wins only on strictly higher
// fitness; otherwise the source survives with its trial incremented.
FoodSource greedy_replace(const FoodSource& source, BitVector candidate_position,
                          double candidate_cost);

// Index of the source a scout would replace: highest trial strictly above
// limit, ties toward the lowest index. nullopt when nothing exceeds limit.
std::optional<std::size_t> scout_offender(const Colony& colony, std::uint64_t limit);

// Replaces at most one over-limit source with a fresh random solution
// (evaluated, trial reset). The colony's best memory is updated only if the
// replacement improves it, so scouting never erases the best. Returns the
// replaced index, if any.
std::optional<std::size_t> scout_phase(Colony& colony, std::uint64_t limit,
                                       const Problem& problem, RngStream& rng);

}  // namespace beecol
