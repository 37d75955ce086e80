#include "beecol/engine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace beecol {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::ibinabc: return "ibinabc";
        case Variant::binabc: return "binabc";
        case Variant::disabc: return "disabc";
        case Variant::abcbin: return "abcbin";
    }
    return "unknown";
}

std::optional<Variant> variant_from_string(std::string_view s) {
    if (s == "ibinabc") return Variant::ibinabc;
    if (s == "binabc") return Variant::binabc;
    if (s == "disabc") return Variant::disabc;
    if (s == "abcbin") return Variant::abcbin;
    return std::nullopt;
}

void EngineConfig::validate(std::size_t dimension) const {
    if (dimension < 1) throw std::invalid_argument("EngineConfig: problem dimension must be >= 1");
    if (colony_size < 2)
        throw std::invalid_argument("EngineConfig: colony size must be >= 2 (neighbor selection "
                                    "excludes the processed source)");
    if (budget < colony_size)
        throw std::invalid_argument("EngineConfig: budget cannot cover initialization");
    if (limit < 1) throw std::invalid_argument("EngineConfig: limit must be >= 1");
    if (max_iterations && *max_iterations < 1)
        throw std::invalid_argument("EngineConfig: explicit max_iterations must be >= 1");
    if (!(q_end > 0.0 && q_end <= q_start && q_start < 1.0))
        throw std::invalid_argument("EngineConfig: need 0 < q_end <= q_start < 1");
    if (variant == Variant::abcbin && !(lower_bound < upper_bound))
        throw std::invalid_argument("EngineConfig: lower bound must be < upper bound");
}

FoodSource greedy_replace(const FoodSource& source, BitVector candidate_position,
                          double candidate_cost) {
    if (fitness(candidate_cost) > source.fitness)
        return make_food_source(std::move(candidate_position), candidate_cost);
    FoodSource kept = source;
    ++kept.trial;
    return kept;
}

std::optional<std::size_t> scout_offender(const Colony& colony, std::uint64_t limit) {
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < colony.sources.size(); ++i) {
        const std::uint64_t trial = colony.sources[i].trial;
        if (trial > limit && (!worst || trial > colony.sources[*worst].trial)) worst = i;
    }
    return worst;
}

std::optional<std::size_t> scout_phase(Colony& colony, std::uint64_t limit,
                                       const Problem& problem, RngStream& rng) {
    const auto offender = scout_offender(colony, limit);
    if (!offender) return std::nullopt;

    BitVector fresh = bernoulli_init(problem.dimension(), rng);
    problem.repair(fresh);
    const double cost = problem.evaluate(fresh);
    ++colony.evals;
    colony.sources[*offender] = make_food_source(std::move(fresh), cost);
    if (cost < colony.best.cost) colony.best = colony.sources[*offender];
    return offender;
}

namespace {

// One run's full state; phases mutate it in Algorithm order.
class ColonyRun {
public:
    ColonyRun(const Problem& problem, const EngineConfig& cfg, RunObserver* observer)
        : problem_(problem),
          cfg_(cfg),
          rng_(cfg.seed),
          t_max_(cfg.resolved_t_max()),
          observer_(observer) {}

    RunResult execute() {
        initialize();
        while (colony_.t < t_max_ && has_budget()) {
            employed_phase();
            onlooker_phase();
            run_scout();
            if (observer_) observer_->on_iteration(colony_.t, colony_.evals, colony_.best.cost);
            ++colony_.t;
            trace_.push_back({colony_.evals, colony_.best.cost});
        }

        RunResult result;
        result.best_cost = colony_.best.cost;
        result.best_position = colony_.best.position;
        result.evals_used = colony_.evals;
        if (const auto opt = problem_.optimum())
            result.hit = std::abs(result.best_cost - *opt) <= kOptimumTolerance;
        result.trace = std::move(trace_);
        return result;
    }

private:
    bool has_budget() const { return colony_.evals < cfg_.budget; }
    bool continuous() const { return cfg_.variant == Variant::abcbin; }

    void initialize() {
        const std::size_t dim = problem_.dimension();
        colony_.sources.reserve(cfg_.colony_size);
        for (std::size_t i = 0; i < cfg_.colony_size; ++i) {
            BitVector position;
            if (continuous()) {
                continuous_.push_back(
                    ops::continuous_reinit(dim, cfg_.lower_bound, cfg_.upper_bound, rng_));
                position = ops::abcbin_binarize(continuous_.back());
            } else {
                position = bernoulli_init(dim, rng_);
            }
            problem_.repair(position);
            const double cost = problem_.evaluate(position);
            ++colony_.evals;
            colony_.sources.push_back(make_food_source(std::move(position), cost));
            if (i == 0 || cost < colony_.best.cost) colony_.best = colony_.sources.back();
        }
        trace_.push_back({colony_.evals, colony_.best.cost});
    }

    std::vector<double> current_probabilities() const {
        std::vector<double> fitnesses(colony_.sources.size());
        for (std::size_t i = 0; i < colony_.sources.size(); ++i)
            fitnesses[i] = colony_.sources[i].fitness;
        return selection_probabilities(fitnesses);
    }

    // Generates the variant's candidate for source i against the chosen
    // neighbor. Returns the touched-position bound (0 = no bound applies).
    std::uint64_t generate(std::size_t i, std::size_t neighbor, BitVector& candidate) {
        const FoodSource& sel = colony_.sources[i];
        const FoodSource& nb = colony_.sources[neighbor];
        switch (cfg_.variant) {
            case Variant::ibinabc: {
                const ops::ScheduleContext ctx{colony_.t, t_max_, problem_.dimension(),
                                               cfg_.q_start, cfg_.q_end, cfg_.alpha};
                const double theta = ops::ibinabc_theta(ctx, nb.fitness, sel.fitness);
                const std::int64_t d = ops::ibinabc_dt(ctx, rng_);
                candidate =
                    ops::xor_multi_bit(sel.position, nb.position, theta, d, cfg_.theta_mode, rng_);
                return static_cast<std::uint64_t>(d);
            }
            case Variant::binabc:
                candidate = ops::binabc_generate(sel.position, nb.position, rng_);
                return 1;
            case Variant::disabc:
                candidate = ops::disabc_generate(sel.position, nb.position, rng_);
                return 0;
            case Variant::abcbin: {
                pending_continuous_ = ops::abcbin_neighbor(continuous_[i], continuous_[neighbor],
                                                           rng_);
                candidate = ops::abcbin_binarize(pending_continuous_);
                return 0;
            }
        }
        return 0;
    }

    // Shared employed/onlooker update path for source i.
    void improve(std::size_t i, std::size_t neighbor, bool onlooker) {
        BitVector candidate;
        const std::uint64_t bound = generate(i, neighbor, candidate);
        problem_.repair(candidate);
        const double cost = problem_.evaluate(candidate);
        ++colony_.evals;
        if (cost < colony_.best.cost) {
            colony_.best = make_food_source(candidate, cost);
            trace_.push_back({colony_.evals, colony_.best.cost});
        }

        const bool accepted = fitness(cost) > colony_.sources[i].fitness;
        std::uint64_t hamming = 0;
        if (observer_) hamming = candidate.hamming(colony_.sources[i].position);
        colony_.sources[i] = greedy_replace(colony_.sources[i], std::move(candidate), cost);
        if (accepted && continuous()) continuous_[i] = std::move(pending_continuous_);

        if (observer_) {
            RunObserver::CandidateEvent ev;
            ev.iteration = colony_.t;
            ev.onlooker = onlooker;
            ev.source_index = i;
            ev.bit_budget = bound;
            ev.hamming = hamming;
            ev.accepted = accepted;
            ev.trial_after = colony_.sources[i].trial;
            ev.candidate_cost = cost;
            ev.evals = colony_.evals;
            observer_->on_candidate(ev);
        }
    }

    void employed_phase() {
        for (std::size_t i = 0; i < colony_.sources.size(); ++i) {
            if (!has_budget()) return;
            const auto probs = current_probabilities();
            const std::size_t neighbor = roulette_select(probs, i, rng_);
            improve(i, neighbor, false);
        }
    }

    void onlooker_phase() {
        for (std::size_t k = 0; k < colony_.sources.size(); ++k) {
            if (!has_budget()) return;
            const auto probs = current_probabilities();
            const std::size_t i = roulette_select(probs, std::nullopt, rng_);
            const std::size_t neighbor = roulette_select(probs, i, rng_);
            improve(i, neighbor, true);
        }
    }

    void run_scout() {
        if (!has_budget()) return;
        std::optional<std::size_t> replaced;
        if (continuous()) {
            replaced = scout_offender(colony_, cfg_.limit);
            if (replaced) {
                continuous_[*replaced] = ops::continuous_reinit(
                    problem_.dimension(), cfg_.lower_bound, cfg_.upper_bound, rng_);
                BitVector fresh = ops::abcbin_binarize(continuous_[*replaced]);
                problem_.repair(fresh);
                const double cost = problem_.evaluate(fresh);
                ++colony_.evals;
                colony_.sources[*replaced] = make_food_source(std::move(fresh), cost);
                if (cost < colony_.best.cost) colony_.best = colony_.sources[*replaced];
            }
        } else {
            replaced = scout_phase(colony_, cfg_.limit, problem_, rng_);
        }
        if (replaced) {
            if (colony_.best.cost < trace_.back().best_cost)
                trace_.push_back({colony_.evals, colony_.best.cost});
            if (observer_) observer_->on_scout(*replaced);
        }
    }

    const Problem& problem_;
    const EngineConfig& cfg_;
    RngStream rng_;
    Colony colony_;
    std::vector<ops::ContinuousSource> continuous_;
    ops::ContinuousSource pending_continuous_;
    std::uint64_t t_max_;
    std::vector<TracePoint> trace_;
    RunObserver* observer_;
};

}  // namespace

RunResult run(const Problem& problem, const EngineConfig& config, RunObserver* observer) {
    config.validate(problem.dimension());
    return ColonyRun(problem, config, observer).execute();
}

}  // namespace beecol
