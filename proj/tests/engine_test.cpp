#include <doctest.h>

#include <cstdint>
#include <map>
#include <vector>

#include "beecol/engine.hpp"
#include "beecol/problem.hpp"

using beecol::BitVector;
using beecol::Colony;
using beecol::EngineConfig;
using beecol::FoodSource;
using beecol::OneMaxProblem;
using beecol::RngStream;
using beecol::RunObserver;
using beecol::RunResult;
using beecol::Variant;

namespace {

// Collects every callback for invariant checks after the run.
struct Recorder final : RunObserver {
    std::vector<CandidateEvent> candidates;
    std::vector<std::size_t> scouts;
    std::vector<std::uint64_t> iterations;

    void on_candidate(const CandidateEvent& e) override { candidates.push_back(e); }
    void on_scout(std::size_t index) override { scouts.push_back(index); }
    void on_iteration(std::uint64_t t, std::uint64_t, double) override {
        iterations.push_back(t);
    }
};

}  // namespace

TEST_CASE("variant names round-trip") {
    using beecol::to_string;
    using beecol::variant_from_string;
    for (Variant v :
         {Variant::ibinabc, Variant::binabc, Variant::disabc, Variant::abcbin})
        CHECK_EQ(variant_from_string(to_string(v)), v);
    CHECK_FALSE(variant_from_string("abc").has_value());
    CHECK_FALSE(variant_from_string("").has_value());
}

TEST_CASE("EngineConfig validation and derived iteration count") {
    EngineConfig cfg;
    CHECK_EQ(cfg.resolved_t_max(), 2'000);  // 80,000 / (2 * 20)
    cfg.max_iterations = 37;
    CHECK_EQ(cfg.resolved_t_max(), 37);
    CHECK_NOTHROW(cfg.validate(16));

    EngineConfig bad = EngineConfig{};
    CHECK_THROWS_AS(bad.validate(0), std::invalid_argument);

    bad = EngineConfig{};
    bad.colony_size = 1;
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.budget = 10;  // smaller than the colony
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.limit = 0;
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.max_iterations = 0;
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.q_end = 0.5;  // above q_start
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.q_start = 1.0;
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);

    bad = EngineConfig{};
    bad.variant = Variant::abcbin;
    bad.lower_bound = 2.0;
    bad.upper_bound = 2.0;
    CHECK_THROWS_AS(bad.validate(16), std::invalid_argument);
}

TEST_CASE("greedy_replace accepts only strict improvement") {
    const FoodSource source = beecol::make_food_source(BitVector{0, 0}, 5.0);

    const FoodSource better = beecol::greedy_replace(source, BitVector{1, 1}, 3.0);
    CHECK_EQ(better.cost, 3.0);
    CHECK_EQ(better.fitness, doctest::Approx(0.25));
    CHECK_EQ(better.trial, 0);
    CHECK_EQ(better.position, BitVector{1, 1});

    const FoodSource tie = beecol::greedy_replace(source, BitVector{1, 1}, 5.0);
    CHECK_EQ(tie.cost, 5.0);
    CHECK_EQ(tie.position, BitVector{0, 0});
    CHECK_EQ(tie.trial, 1);

    FoodSource stuck = source;
    stuck.trial = 4;
    const FoodSource worse = beecol::greedy_replace(stuck, BitVector{1, 0}, 9.0);
    CHECK_EQ(worse.position, BitVector{0, 0});
    CHECK_EQ(worse.trial, 5);
}

TEST_CASE("scout_offender picks the worst over-limit source") {
    Colony colony;
    for (std::uint64_t trial : {3u, 7u, 7u, 2u}) {
        FoodSource s = beecol::make_food_source(BitVector{0}, 1.0);
        s.trial = trial;
        colony.sources.push_back(s);
    }
    CHECK_EQ(beecol::scout_offender(colony, 6), std::size_t{1});  // first of the tied 7s
    CHECK_EQ(beecol::scout_offender(colony, 2), std::size_t{1});
    CHECK_FALSE(beecol::scout_offender(colony, 7).has_value());  // strictly above required
    CHECK_FALSE(beecol::scout_offender(Colony{}, 0).has_value());
}

TEST_CASE("scout_phase replaces one source and keeps the best memory") {
    const OneMaxProblem problem(4);
    Colony colony;
    colony.sources.push_back(beecol::make_food_source(BitVector{1, 1, 1, 1}, 0.0));
    colony.sources.push_back(beecol::make_food_source(BitVector{0, 0, 0, 0}, 4.0));
    colony.sources[0].trial = 10;
    colony.best = colony.sources[0];

    RngStream rng(5);
    const auto replaced = beecol::scout_phase(colony, 3, problem, rng);
    CHECK_EQ(replaced, std::size_t{0});
    CHECK_EQ(colony.sources[0].trial, 0);
    CHECK_EQ(colony.evals, 1);
    // the optimal position was scouted away from the population, not from memory
    CHECK_EQ(colony.best.cost, 0.0);
    CHECK_EQ(colony.best.position, BitVector{1, 1, 1, 1});
    CHECK_EQ(colony.sources[1].trial, 0);  // untouched

    const auto none = beecol::scout_phase(colony, 20, problem, rng);
    CHECK_FALSE(none.has_value());
    CHECK_EQ(colony.evals, 1);
}

TEST_CASE("run solves onemax within a small budget") {
    const OneMaxProblem problem(20);
    EngineConfig cfg;
    cfg.colony_size = 20;
    cfg.budget = 4'000;
    cfg.limit = 20 * 20 * 2;
    cfg.seed = 3;

    const RunResult result = beecol::run(problem, cfg);
    CHECK_EQ(result.best_cost, 0.0);
    CHECK(result.hit);
    CHECK_EQ(result.best_position, BitVector(20, 1));
    CHECK(result.evals_used <= 4'000);
}

TEST_CASE("run with budget equal to the colony stops after initialization") {
    const OneMaxProblem problem(8);
    EngineConfig cfg;
    cfg.colony_size = 4;
    cfg.budget = 4;
    cfg.seed = 9;

    const RunResult result = beecol::run(problem, cfg);
    CHECK_EQ(result.evals_used, 4);
    CHECK_EQ(result.trace.size(), 1);
    CHECK_EQ(result.trace[0].evals, 4);
    CHECK_EQ(result.trace[0].best_cost, result.best_cost);
}

TEST_CASE("run is bit-identical for equal seeds") {
    const OneMaxProblem problem(16);
    EngineConfig cfg;
    cfg.colony_size = 10;
    cfg.budget = 600;
    cfg.limit = 40;
    cfg.seed = 123;

    for (Variant v :
         {Variant::ibinabc, Variant::binabc, Variant::disabc, Variant::abcbin}) {
        cfg.variant = v;
        const RunResult a = beecol::run(problem, cfg);
        const RunResult b = beecol::run(problem, cfg);
        CHECK_EQ(a.best_cost, b.best_cost);
        CHECK_EQ(a.evals_used, b.evals_used);
        CHECK_EQ(a.best_position, b.best_position);
        CHECK(a.trace == b.trace);
    }
}

TEST_CASE("different seeds explore differently") {
    const OneMaxProblem problem(16);
    EngineConfig cfg;
    cfg.colony_size = 10;
    cfg.budget = 400;
    cfg.limit = 40;

    bool any_difference = false;
    RunResult first;
    for (std::uint64_t seed = 1; seed <= 5 && !any_difference; ++seed) {
        cfg.seed = seed;
        RunResult r = beecol::run(problem, cfg);
        if (seed > 1)
            any_difference = !(r.trace == first.trace) || r.best_cost != first.best_cost;
        else
            first = std::move(r);
    }
    CHECK(any_difference);
}

TEST_CASE("every variant produces a sane run on onemax") {
    const OneMaxProblem problem(12);
    for (Variant v :
         {Variant::ibinabc, Variant::binabc, Variant::disabc, Variant::abcbin}) {
        EngineConfig cfg;
        cfg.variant = v;
        cfg.colony_size = 10;
        cfg.budget = 2'000;
        cfg.limit = 240;
        cfg.seed = 11;

        const RunResult result = beecol::run(problem, cfg);
        CHECK(result.evals_used <= cfg.budget);
        CHECK(result.evals_used >= cfg.colony_size);
        REQUIRE_FALSE(result.trace.empty());
        CHECK_EQ(result.trace.back().best_cost, result.best_cost);
        CHECK_EQ(result.hit, result.best_cost == 0.0);

        double prev_cost = result.trace.front().best_cost;
        std::uint64_t prev_evals = result.trace.front().evals;
        for (const auto& point : result.trace) {
            CHECK(point.best_cost <= prev_cost);
            CHECK(point.evals >= prev_evals);
            CHECK(point.evals <= cfg.budget);
            prev_cost = point.best_cost;
            prev_evals = point.evals;
        }
    }
}

TEST_CASE("explicit max_iterations overrides the derived count") {
    const OneMaxProblem problem(10);
    EngineConfig cfg;
    cfg.colony_size = 6;
    cfg.budget = 100'000;
    cfg.max_iterations = 5;
    cfg.limit = 30;
    cfg.seed = 4;

    Recorder recorder;
    const RunResult result = beecol::run(problem, cfg, &recorder);
    CHECK_EQ(recorder.iterations.size(), 5);
    CHECK_EQ(recorder.iterations.front(), 0);
    CHECK_EQ(recorder.iterations.back(), 4);
    // 6 initial evaluations plus 12 candidates per iteration
    CHECK_EQ(result.evals_used, 6 + 5 * 12);
}

namespace {

// Validates candidate events as they arrive, so scout resets are applied in
// chronological order between them.
struct InvariantChecker final : RunObserver {
    std::size_t colony_size = 0;
    std::uint64_t budget = 0;
    std::map<std::size_t, std::uint64_t> trials;
    std::uint64_t prev_evals = 0;
    std::size_t scout_count = 0;
    std::size_t iteration_count = 0;

    void on_candidate(const CandidateEvent& e) override {
        CHECK(e.source_index < colony_size);
        CHECK(e.evals > prev_evals);
        CHECK(e.evals <= budget);
        prev_evals = e.evals;
        if (e.bit_budget > 0) CHECK(e.hamming <= e.bit_budget);
        if (e.accepted)
            CHECK_EQ(e.trial_after, 0);
        else
            CHECK_EQ(e.trial_after, trials[e.source_index] + 1);
        trials[e.source_index] = e.trial_after;
    }
    void on_scout(std::size_t index) override {
        CHECK(index < colony_size);
        trials[index] = 0;
        ++scout_count;
    }
    void on_iteration(std::uint64_t, std::uint64_t, double) override { ++iteration_count; }
};

}  // namespace

TEST_CASE("observer events respect engine invariants") {
    const OneMaxProblem problem(14);
    for (Variant v :
         {Variant::ibinabc, Variant::binabc, Variant::disabc, Variant::abcbin}) {
        EngineConfig cfg;
        cfg.variant = v;
        cfg.colony_size = 8;
        cfg.budget = 1'200;
        cfg.limit = 20;
        cfg.seed = 77;

        InvariantChecker checker;
        checker.colony_size = cfg.colony_size;
        checker.budget = cfg.budget;
        const RunResult result = beecol::run(problem, cfg, &checker);

        CHECK(checker.scout_count <= checker.iteration_count);
        CHECK(result.evals_used <= cfg.budget);
    }
}

TEST_CASE("scouts fire under a tight limit and reset progress") {
    const OneMaxProblem problem(6);
    EngineConfig cfg;
    cfg.colony_size = 4;
    cfg.budget = 500;
    cfg.limit = 1;
    cfg.seed = 21;

    Recorder recorder;
    beecol::run(problem, cfg, &recorder);
    CHECK(recorder.scouts.size() >= 1);
    CHECK(recorder.scouts.size() <= recorder.iterations.size());
}
