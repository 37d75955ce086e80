#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beecol/engine.hpp"
#include "beecol/uflp.hpp"

namespace beecol::bench {

// Engine parameterization independent of the instance. colony_size = 0
// means "use the problem dimension" (the continuous-mapping variant's
// published setting). The scout limit is expressed as a multiple of N * D.
struct VariantConfig {
    Variant variant = Variant::ibinabc;
    std::size_t colony_size = 20;
    double limit_mult = 2.0;
    double q_start = 0.3;
    double q_end = 0.1;
    std::uint32_t alpha = 2;
    ops::ThetaMode theta_mode = ops::ThetaMode::probabilistic;
    double lower_bound = 0.0;
    double upper_bound = 2.0;

    std::size_t resolved_colony_size(std::size_t dimension) const {
        return colony_size == 0 ? dimension : colony_size;
    }
    std::uint64_t resolved_limit(std::size_t dimension) const;
    EngineConfig engine_config(std::size_t dimension, std::uint64_t budget,
                               std::uint64_t seed) const;
};

struct ExperimentSpec {
    std::vector<std::string> instances;  // file paths or registry names
    std::vector<VariantConfig> variants;
    std::uint32_t repetitions = 30;
    std::uint64_t base_seed = 1;  // run k uses base_seed + k
    std::uint64_t budget = 80'000;
    bool record_traces = false;
    std::string data_dir = "data/orlib";
    unsigned workers = 1;
};

// Aggregate over the repetitions of one (instance, variant) cell.
struct SummaryRow {
    std::string instance;
    std::string variant;
    std::size_t colony_size = 0;
    std::uint64_t limit = 0;
    double q_start = 0.0;
    double q_end = 0.0;
    std::uint32_t alpha = 0;
    std::uint64_t budget = 0;
    std::uint32_t runs = 0;
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation (divisor n)
    double best = 0.0;
    double worst = 0.0;
    std::optional<double> gap;  // percent above the known optimum
    std::uint32_t hit = 0;      // runs within kOptimumTolerance of the optimum
};

struct RunRecord {
    std::uint32_t run_index = 0;
    std::uint64_t seed = 0;
    double best_cost = 0.0;
    std::uint64_t evals = 0;
    bool hit = false;
    std::vector<TracePoint> trace;  // only populated when traces are recorded
};

struct CellResult {
    std::string instance;
    std::string variant;
    std::vector<RunRecord> runs;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;
    std::vector<CellResult> cells;  // cells[i] backs rows[i]
};

// Percentage excess of a mean cost over the optimum.
double gap(double mean, double optimum);

// Mean / population-std / best / worst / gap / hit over one cell's costs.
// Fills only the statistical fields of the row.
SummaryRow summarize(std::span<const double> costs, std::optional<double> optimum,
                     std::uint32_t repetitions);

// Resolves a registry name (case-insensitive, file <data_dir>/<name>.txt) or
// a direct file path; attaches the published optimum when the name (or file
// stem) is in the registry. Throws on unknown names and unparseable files.
std::shared_ptr<const problems::UflpInstance> resolve_instance(const std::string& name_or_path,
                                                               const std::string& data_dir);

// Runs repetitions x instances x variants, aggregating each cell. All
// instances and configurations are validated before the first run starts.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// The 24-cell parameter grid on one instance: N in {20, 40} x Q in
// {(0.5, 0.3), (0.5, 0.1), (0.3, 0.1)} x limit multiplier in
// {0.5, 1, 2, 4}, each cell aggregated like run_experiment.
ExperimentResult tuning_sweep(const std::string& instance, std::uint64_t budget,
                              std::uint32_t repetitions, std::uint64_t base_seed = 1,
                              const std::string& data_dir = "data/orlib",
                              unsigned workers = 1, bool record_traces = false);

// Per-variant configurations used for the published comparison: each
// variant's own population and limit settings under a shared evaluation
// budget.
std::vector<VariantConfig> comparison_variants();

// --- report output ---------------------------------------------------------

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
void write_runs_csv(std::ostream& out, const ExperimentResult& result);
void write_trace_csv(std::ostream& out, const CellResult& cell);
std::string to_json(const ExperimentSpec& spec, const ExperimentResult& result);

// Appends rows from a published-results reference file (CSV with columns
// algorithm,instance,gap,std,hit) to a summary report, variant names
// prefixed "ref:". Unknown columns for those rows stay empty.
void append_reference_rows(std::ostream& out, std::istream& reference,
                           std::span<const std::string> instance_filter);

}  // namespace beecol::bench
