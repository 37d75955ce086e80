#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beecol/bench.hpp"

namespace {

using beecol::Variant;
using beecol::ops::ThetaMode;
namespace bench = beecol::bench;

Variant parse_variant(const std::string& name) {
    const auto v = beecol::variant_from_string(name);
    if (!v)
        throw std::invalid_argument("unknown variant \"" + name +
                                    "\" (expected ibinabc, binabc, disabc, or abcbin)");
    return *v;
}

struct OutputOptions {
    std::string out_path;
    std::string format = "csv";
    bool trace = false;
    std::string reference_path;
    std::vector<std::string> instance_filter;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "write results to this file instead of stdout");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--trace", opts.trace, "record best-cost traces for every run");
}

void check_output_options(const OutputOptions& opts) {
    if (opts.trace && opts.format == "csv" && opts.out_path.empty())
        throw std::invalid_argument("--trace with csv output requires --out");
    if (!opts.reference_path.empty() && opts.format != "csv")
        throw std::invalid_argument("--reference requires csv output");
}

void append_reference(std::ostream& out, const OutputOptions& opts) {
    if (opts.reference_path.empty()) return;
    std::ifstream ref(opts.reference_path);
    if (!ref)
        throw std::invalid_argument("cannot open reference file " + opts.reference_path);
    bench::append_reference_rows(out, ref, opts.instance_filter);
}

void emit(const bench::ExperimentSpec& spec, const bench::ExperimentResult& result,
          const OutputOptions& opts) {
    namespace fs = std::filesystem;
    if (opts.format == "json") {
        const std::string doc = bench::to_json(spec, result);
        if (opts.out_path.empty()) {
            std::cout << doc;
        } else {
            std::ofstream out(opts.out_path);
            if (!out) throw std::runtime_error("cannot open output file " + opts.out_path);
            out << doc;
        }
        return;
    }

    if (opts.out_path.empty()) {
        bench::write_summary_csv(std::cout, result.rows);
        append_reference(std::cout, opts);
        return;
    }

    std::ofstream summary(opts.out_path);
    if (!summary) throw std::runtime_error("cannot open output file " + opts.out_path);
    bench::write_summary_csv(summary, result.rows);
    append_reference(summary, opts);

    const fs::path base(opts.out_path);
    const fs::path runs_path =
        base.parent_path() / (base.stem().string() + "_runs" + base.extension().string());
    std::ofstream runs(runs_path);
    if (!runs) throw std::runtime_error("cannot open output file " + runs_path.string());
    bench::write_runs_csv(runs, result);

    if (opts.trace) {
        for (std::size_t c = 0; c < result.cells.size(); ++c) {
            const fs::path trace_path =
                base.parent_path() / (base.stem().string() + "_trace_cell" + std::to_string(c) +
                                      base.extension().string());
            std::ofstream trace(trace_path);
            if (!trace)
                throw std::runtime_error("cannot open output file " + trace_path.string());
            bench::write_trace_csv(trace, result.cells[c]);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary artificial bee colony benchmark driver"};
    app.require_subcommand(1);

    const std::map<std::string, ThetaMode> theta_modes{
        {"prob", ThetaMode::probabilistic}, {"threshold", ThetaMode::threshold}};

    // --- run ---------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "run one variant on a list of instances");
    std::vector<std::string> run_instances;
    std::string run_variant = "ibinabc";
    bench::VariantConfig run_config;
    bench::ExperimentSpec run_spec;
    ThetaMode run_theta = ThetaMode::probabilistic;
    OutputOptions run_out;
    run_cmd->add_option("--instances", run_instances, "instance names or file paths")
        ->required()
        ->delimiter(',');
    run_cmd->add_option("--variant", run_variant, "ibinabc|binabc|disabc|abcbin")
        ->capture_default_str();
    run_cmd->add_option("--n", run_config.colony_size, "colony size (0 = problem dimension)")
        ->capture_default_str();
    run_cmd->add_option("--limit-mult", run_config.limit_mult, "limit = round(N*D*mult)")
        ->capture_default_str();
    run_cmd->add_option("--qstart", run_config.q_start, "theta decay start")
        ->capture_default_str();
    run_cmd->add_option("--qend", run_config.q_end, "theta decay end")->capture_default_str();
    run_cmd->add_option("--alpha", run_config.alpha, "bit-budget jitter bound")
        ->capture_default_str();
    run_cmd->add_option("--theta-mode", run_theta, "theta interpretation")
        ->transform(CLI::CheckedTransformer(theta_modes, CLI::ignore_case));
    run_cmd->add_option("--lb", run_config.lower_bound, "continuous lower bound")
        ->capture_default_str();
    run_cmd->add_option("--ub", run_config.upper_bound, "continuous upper bound")
        ->capture_default_str();
    run_cmd->add_option("--budget", run_spec.budget, "evaluation budget per run")
        ->capture_default_str();
    run_cmd->add_option("--runs", run_spec.repetitions, "repetitions per instance")
        ->capture_default_str();
    run_cmd->add_option("--seed", run_spec.base_seed, "base seed; run k uses seed+k")
        ->capture_default_str();
    run_cmd->add_option("--workers", run_spec.workers, "worker threads")->capture_default_str();
    run_cmd->add_option("--data-dir", run_spec.data_dir, "directory with instance files")
        ->capture_default_str();
    add_output_options(run_cmd, run_out);

    // --- sweep -------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid for the adaptive variant");
    std::string sweep_instance;
    bench::ExperimentSpec sweep_spec;
    OutputOptions sweep_out;
    sweep_cmd->add_option("--instance", sweep_instance, "instance name or file path")->required();
    sweep_cmd->add_option("--budget", sweep_spec.budget, "evaluation budget per run")
        ->capture_default_str();
    sweep_cmd->add_option("--runs", sweep_spec.repetitions, "repetitions per cell")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_spec.base_seed, "base seed; run k uses seed+k")
        ->capture_default_str();
    sweep_cmd->add_option("--workers", sweep_spec.workers, "worker threads")
        ->capture_default_str();
    sweep_cmd->add_option("--data-dir", sweep_spec.data_dir, "directory with instance files")
        ->capture_default_str();
    add_output_options(sweep_cmd, sweep_out);

    // --- compare -----------------------------------------------------------
    auto* compare_cmd =
        app.add_subcommand("compare", "run the published per-variant configurations");
    std::vector<std::string> compare_instances;
    std::vector<std::string> compare_names = {"ibinabc", "binabc", "disabc", "abcbin"};
    bench::ExperimentSpec compare_spec;
    OutputOptions compare_out;
    compare_cmd->add_option("--instances", compare_instances, "instance names or file paths")
        ->required()
        ->delimiter(',');
    compare_cmd->add_option("--variants", compare_names, "subset of ibinabc,binabc,disabc,abcbin")
        ->delimiter(',');
    compare_cmd->add_option("--budget", compare_spec.budget, "evaluation budget per run")
        ->capture_default_str();
    compare_cmd->add_option("--runs", compare_spec.repetitions, "repetitions per cell")
        ->capture_default_str();
    compare_cmd->add_option("--seed", compare_spec.base_seed, "base seed; run k uses seed+k")
        ->capture_default_str();
    compare_cmd->add_option("--workers", compare_spec.workers, "worker threads")
        ->capture_default_str();
    compare_cmd->add_option("--data-dir", compare_spec.data_dir, "directory with instance files")
        ->capture_default_str();
    compare_cmd->add_option("--reference", compare_out.reference_path,
                            "append published reference rows from this csv");
    add_output_options(compare_cmd, compare_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
            run_config.variant = parse_variant(run_variant);
            run_config.theta_mode = run_theta;
            run_spec.instances = run_instances;
            run_spec.variants = {run_config};
            run_spec.record_traces = run_out.trace;
            check_output_options(run_out);
            emit(run_spec, bench::run_experiment(run_spec), run_out);
            return 0;
        }
        if (*sweep_cmd) {
            check_output_options(sweep_out);
            const auto result = bench::tuning_sweep(
                sweep_instance, sweep_spec.budget, sweep_spec.repetitions, sweep_spec.base_seed,
                sweep_spec.data_dir, sweep_spec.workers, sweep_out.trace);
            sweep_spec.instances = {sweep_instance};
            emit(sweep_spec, result, sweep_out);
            return 0;
        }
        // compare
        std::vector<bench::VariantConfig> selected;
        const auto published = bench::comparison_variants();
        for (const auto& name : compare_names) {
            const Variant v = parse_variant(name);
            for (const auto& vc : published)
                if (vc.variant == v) selected.push_back(vc);
        }
        compare_spec.instances = compare_instances;
        compare_spec.variants = selected;
        compare_spec.record_traces = compare_out.trace;
        compare_out.instance_filter = compare_instances;
        check_output_options(compare_out);
        emit(compare_spec, bench::run_experiment(compare_spec), compare_out);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const beecol::problems::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
