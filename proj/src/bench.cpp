#include "beecol/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace beecol::bench {

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::uint64_t VariantConfig::resolved_limit(std::size_t dimension) const {
    const double raw = static_cast<double>(resolved_colony_size(dimension)) *
                       static_cast<double>(dimension) * limit_mult;
    const auto lim = std::llround(raw);
    return lim < 1 ? std::uint64_t{1} : static_cast<std::uint64_t>(lim);
}

EngineConfig VariantConfig::engine_config(std::size_t dimension, std::uint64_t budget,
                                          std::uint64_t seed) const {
    EngineConfig ec;
    ec.colony_size = resolved_colony_size(dimension);
    ec.budget = budget;
    ec.limit = resolved_limit(dimension);
    ec.variant = variant;
    ec.q_start = q_start;
    ec.q_end = q_end;
    ec.alpha = alpha;
    ec.theta_mode = theta_mode;
    ec.lower_bound = lower_bound;
    ec.upper_bound = upper_bound;
    ec.seed = seed;
    return ec;
}

double gap(double mean, double optimum) {
    if (!(optimum > 0.0)) throw std::invalid_argument("gap: optimum must be > 0");
    return (mean - optimum) / optimum * 100.0;
}

SummaryRow summarize(std::span<const double> costs, std::optional<double> optimum,
                     std::uint32_t repetitions) {
    if (repetitions < 1) throw std::invalid_argument("summarize: repetitions must be >= 1");
    if (costs.size() != repetitions)
        throw std::invalid_argument("summarize: cost count does not match repetitions");

    SummaryRow row;
    row.runs = repetitions;
    double sum = 0.0;
    row.best = costs[0];
    row.worst = costs[0];
    for (double c : costs) {
        sum += c;
        row.best = std::min(row.best, c);
        row.worst = std::max(row.worst, c);
    }
    row.mean = sum / static_cast<double>(repetitions);

    double sq = 0.0;
    for (double c : costs) sq += (c - row.mean) * (c - row.mean);
    row.stddev = std::sqrt(sq / static_cast<double>(repetitions));  // population divisor

    if (optimum) {
        row.gap = gap(row.mean, *optimum);
        for (double c : costs)
            if (std::abs(c - *optimum) <= kOptimumTolerance) ++row.hit;
    }
    return row;
}

std::shared_ptr<const problems::UflpInstance> resolve_instance(const std::string& name_or_path,
                                                               const std::string& data_dir) {
    namespace fs = std::filesystem;
    const auto& registry = problems::optima_registry();

    fs::path path;
    std::string canonical_name;
    std::optional<double> optimum;

    if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path)) {
        path = name_or_path;
        canonical_name = lower_copy(path.stem().string());
        if (const auto it = registry.find(canonical_name); it != registry.end())
            optimum = it->second;
    } else {
        canonical_name = lower_copy(name_or_path);
        const auto it = registry.find(canonical_name);
        if (it == registry.end())
            throw std::invalid_argument("unknown instance \"" + name_or_path +
                                        "\": not a file and not a registry name");
        optimum = it->second;
        path = fs::path(data_dir) / (canonical_name + ".txt");
        if (!fs::exists(path))
            throw std::invalid_argument("instance file for \"" + canonical_name +
                                        "\" not found at " + path.string());
    }

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file " + path.string());
    try {
        return std::make_shared<const problems::UflpInstance>(
            problems::parse_orlib(in, canonical_name, optimum));
    } catch (const problems::ParseError& e) {
        throw problems::ParseError(path.string() + ": " + e.what());
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.instances.empty()) throw std::invalid_argument("experiment: instance list is empty");
    if (spec.variants.empty()) throw std::invalid_argument("experiment: variant list is empty");
    if (spec.repetitions < 1)
        throw std::invalid_argument("experiment: repetitions must be >= 1");

    // Resolve and validate everything up front; nothing runs on a bad spec.
    std::vector<std::shared_ptr<const problems::UflpInstance>> instances;
    instances.reserve(spec.instances.size());
    for (const auto& token : spec.instances)
        instances.push_back(resolve_instance(token, spec.data_dir));
    for (const auto& inst : instances)
        for (const auto& vc : spec.variants)
            vc.engine_config(inst->facility_count(), spec.budget, spec.base_seed)
                .validate(inst->facility_count());

    struct Cell {
        std::shared_ptr<const problems::UflpInstance> inst;
        const VariantConfig* config;
    };
    std::vector<Cell> cells;
    for (const auto& inst : instances)
        for (const auto& vc : spec.variants) cells.push_back({inst, &vc});

    const std::size_t total = cells.size() * spec.repetitions;
    std::vector<std::vector<RunRecord>> records(cells.size());
    for (auto& r : records) r.resize(spec.repetitions);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto work = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= total) return;
            {
                std::scoped_lock lock(error_mutex);
                if (first_error) return;
            }
            const std::size_t cell_idx = job / spec.repetitions;
            const auto rep = static_cast<std::uint32_t>(job % spec.repetitions);
            try {
                const Cell& cell = cells[cell_idx];
                const problems::UflpProblem problem(cell.inst);
                const std::uint64_t seed = spec.base_seed + rep;
                const EngineConfig ec =
                    cell.config->engine_config(problem.dimension(), spec.budget, seed);
                RunResult run_result = run(problem, ec);

                RunRecord rec;
                rec.run_index = rep;
                rec.seed = seed;
                rec.best_cost = run_result.best_cost;
                rec.evals = run_result.evals_used;
                rec.hit = run_result.hit;
                if (spec.record_traces) rec.trace = std::move(run_result.trace);
                records[cell_idx][rep] = std::move(rec);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned workers = std::max(1u, spec.workers);
    if (workers == 1 || total == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const unsigned count = static_cast<unsigned>(
            std::min<std::size_t>(workers, total));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    ExperimentResult result;
    result.rows.reserve(cells.size());
    result.cells.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        std::vector<double> costs(spec.repetitions);
        for (std::uint32_t k = 0; k < spec.repetitions; ++k) costs[k] = records[c][k].best_cost;

        SummaryRow row = summarize(costs, cell.inst->optimum(), spec.repetitions);
        row.instance = cell.inst->name();
        row.variant = std::string(to_string(cell.config->variant));
        row.colony_size = cell.config->resolved_colony_size(cell.inst->facility_count());
        row.limit = cell.config->resolved_limit(cell.inst->facility_count());
        row.q_start = cell.config->q_start;
        row.q_end = cell.config->q_end;
        row.alpha = cell.config->alpha;
        row.budget = spec.budget;
        result.rows.push_back(std::move(row));

        CellResult cr;
        cr.instance = cell.inst->name();
        cr.variant = std::string(to_string(cell.config->variant));
        cr.runs = std::move(records[c]);
        result.cells.push_back(std::move(cr));
    }
    return result;
}

ExperimentResult tuning_sweep(const std::string& instance, std::uint64_t budget,
                              std::uint32_t repetitions, std::uint64_t base_seed,
                              const std::string& data_dir, unsigned workers,
                              bool record_traces) {
    ExperimentSpec spec;
    spec.instances = {instance};
    spec.repetitions = repetitions;
    spec.base_seed = base_seed;
    spec.budget = budget;
    spec.data_dir = data_dir;
    spec.workers = workers;
    spec.record_traces = record_traces;

    const std::pair<double, double> q_pairs[] = {{0.5, 0.3}, {0.5, 0.1}, {0.3, 0.1}};
    for (const double mult : {0.5, 1.0, 2.0, 4.0})
        for (const std::size_t n : {std::size_t{20}, std::size_t{40}})
            for (const auto& [qs, qe] : q_pairs) {
                VariantConfig vc;
                vc.variant = Variant::ibinabc;
                vc.colony_size = n;
                vc.limit_mult = mult;
                vc.q_start = qs;
                vc.q_end = qe;
                spec.variants.push_back(vc);
            }
    return run_experiment(spec);
}

std::vector<VariantConfig> comparison_variants() {
    std::vector<VariantConfig> variants(4);
    variants[0].variant = Variant::ibinabc;
    variants[0].colony_size = 20;
    variants[0].limit_mult = 2.0;

    variants[1].variant = Variant::binabc;
    variants[1].colony_size = 40;
    variants[1].limit_mult = 0.25;

    variants[2].variant = Variant::disabc;
    variants[2].colony_size = 40;
    variants[2].limit_mult = 2.5;

    variants[3].variant = Variant::abcbin;
    variants[3].colony_size = 0;  // population = problem dimension
    variants[3].limit_mult = 0.5;
    return variants;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
    out << "instance,variant,N,limit,q_start,q_end,alpha,budget,runs,mean,std,best,worst,gap,hit\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.variant << ',' << r.colony_size << ',' << r.limit << ','
            << compact(r.q_start) << ',' << compact(r.q_end) << ',' << r.alpha << ',' << r.budget
            << ',' << r.runs << ',' << fixed6(r.mean) << ',' << fixed6(r.stddev) << ','
            << fixed6(r.best) << ',' << fixed6(r.worst) << ','
            << (r.gap ? fixed6(*r.gap) : std::string{}) << ',' << r.hit << '\n';
    }
}

void write_runs_csv(std::ostream& out, const ExperimentResult& result) {
    out << "cell,instance,variant,run_index,seed,best_cost,evals,hit\n";
    for (std::size_t c = 0; c < result.cells.size(); ++c) {
        const CellResult& cell = result.cells[c];
        for (const RunRecord& rec : cell.runs)
            out << c << ',' << cell.instance << ',' << cell.variant << ',' << rec.run_index << ','
                << rec.seed << ',' << fixed6(rec.best_cost) << ',' << rec.evals << ','
                << (rec.hit ? 1 : 0) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const CellResult& cell) {
    out << "run_index,seed,evals,best_cost\n";
    for (const RunRecord& rec : cell.runs)
        for (const TracePoint& p : rec.trace)
            out << rec.run_index << ',' << rec.seed << ',' << p.evals << ','
                << fixed6(p.best_cost) << '\n';
}

std::string to_json(const ExperimentSpec& spec, const ExperimentResult& result) {
    nlohmann::ordered_json doc;
    doc["spec"] = {{"instances", spec.instances},
                   {"repetitions", spec.repetitions},
                   {"base_seed", spec.base_seed},
                   {"budget", spec.budget}};

    auto& rows = doc["summary"] = nlohmann::ordered_json::array();
    for (const auto& r : result.rows) {
        nlohmann::ordered_json row = {{"instance", r.instance},
                                      {"variant", r.variant},
                                      {"N", r.colony_size},
                                      {"limit", r.limit},
                                      {"q_start", r.q_start},
                                      {"q_end", r.q_end},
                                      {"alpha", r.alpha},
                                      {"budget", r.budget},
                                      {"runs", r.runs},
                                      {"mean", r.mean},
                                      {"std", r.stddev},
                                      {"best", r.best},
                                      {"worst", r.worst},
                                      {"hit", r.hit}};
        if (r.gap)
            row["gap"] = *r.gap;
        else
            row["gap"] = nullptr;
        rows.push_back(std::move(row));
    }

    auto& cells = doc["runs"] = nlohmann::ordered_json::array();
    for (const auto& cell : result.cells) {
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& rec : cell.runs) {
            nlohmann::ordered_json jr = {{"run_index", rec.run_index},
                                         {"seed", rec.seed},
                                         {"best_cost", rec.best_cost},
                                         {"evals", rec.evals},
                                         {"hit", rec.hit}};
            if (!rec.trace.empty()) {
                auto& tr = jr["trace"] = nlohmann::ordered_json::array();
                for (const auto& p : rec.trace) tr.push_back({p.evals, p.best_cost});
            }
            records.push_back(std::move(jr));
        }
        cells.push_back({{"instance", cell.instance},
                         {"variant", cell.variant},
                         {"records", std::move(records)}});
    }
    return doc.dump(2) + "\n";
}

void append_reference_rows(std::ostream& out, std::istream& reference,
                           std::span<const std::string> instance_filter) {
    std::vector<std::string> wanted;
    for (const auto& inst : instance_filter) wanted.push_back(lower_copy(inst));

    std::string line;
    bool header = true;
    while (std::getline(reference, line)) {
        if (line.empty()) continue;
        if (header) {  // column names: algorithm,instance,gap,std,hit
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string algorithm, instance, gap_text, std_text, hit_text;
        std::getline(ss, algorithm, ',');
        std::getline(ss, instance, ',');
        std::getline(ss, gap_text, ',');
        std::getline(ss, std_text, ',');
        std::getline(ss, hit_text, ',');
        const std::string inst_lower = lower_copy(instance);
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), inst_lower) == wanted.end())
            continue;
        out << inst_lower << ",ref:" << algorithm << ",,,,,,,,," << std_text << ",,," << gap_text
            << ',' << hit_text << '\n';
    }
}

}  // namespace beecol::bench
