// mxent: multiplex layer entanglement toolkit.
//
// Subcommands: analyze, generate, sweep, stats, plot.
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mxent/edgelist_io.hpp"
#include "mxent/entanglement.hpp"
#include "mxent/generator.hpp"
#include "mxent/svg_plot.hpp"
#include "mxent/sweep.hpp"

namespace {

std::string dataset_name(const std::string& name_flag, const std::string& input_path) {
    if (!name_flag.empty()) return name_flag;
    return std::filesystem::path(input_path).stem().string();
}

struct AnalyzeArgs {
    std::string input;
    std::string output;
    std::string name;
    bool src_first = false;
    bool directed = false;
    bool per_block = false;
    double tol = 1e-10;
    int max_iter = 100000;
};

int cmd_analyze(const AnalyzeArgs& args) {
    mxent::EdgeListFormat fmt;
    fmt.order = args.src_first ? mxent::ColumnOrder::SrcFirst : mxent::ColumnOrder::LayerFirst;
    fmt.directed = args.directed;

    const mxent::MultiplexNetwork net = mxent::parse_multiplex_edgelist(args.input, fmt);
    const mxent::AnalysisOptions opts{args.tol, args.max_iter, args.per_block};
    const auto results = mxent::analyze(net, opts);
    std::cerr << "note: normalized_homogeneity uses the toolkit definition "
                 "(attainable cosine range rescaled onto [0,1])\n";

    std::ostringstream csv;
    mxent::write_entanglement_csv(results, dataset_name(args.name, args.input), csv);
    if (args.output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(args.output);
        if (!out) throw std::runtime_error("cannot open for writing: " + args.output);
        out << csv.str();
    }
    for (const auto& r : results)
        if (!r.converged) return 2;
    return 0;
}

struct GenerateArgs {
    std::uint64_t nodes = 0;
    std::uint32_t layers = 0;
    double dropout = 0.0;
    std::uint64_t seed = 0;
    std::string output;
};

int cmd_generate(const GenerateArgs& args) {
    const mxent::GeneratorConfig cfg{args.nodes, args.layers, args.dropout, args.seed};
    const mxent::GeneratedNetwork gen = mxent::generate(cfg);
    mxent::write_multiplex_edgelist(gen.network, args.output);

    std::ofstream meta(args.output + ".meta");
    if (!meta) throw std::runtime_error("cannot open for writing: " + args.output + ".meta");
    meta << "nodes=" << cfg.nodes << "\n"
         << "layers=" << cfg.layers << "\n"
         << "dropout=" << mxent::format_real(cfg.dropout) << "\n"
         << "seed=" << cfg.seed << "\n"
         << "rng=" << mxent::kRngAlgorithm << "\n"
         << "edges=" << gen.network.num_edges() << "\n";
    return 0;
}

struct SweepArgs {
    std::string nodes_list;
    std::string layers_list;
    std::string dropout_range;
    int seeds_per_cell = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool timings = false;
    double tol = 1e-10;
    int max_iter = 100000;
    std::string output;
};

int cmd_sweep(const SweepArgs& args) {
    mxent::SweepGrid grid;
    grid.node_counts = mxent::parse_count_list(args.nodes_list);
    for (const auto v : mxent::parse_count_list(args.layers_list))
        grid.layer_counts.push_back(static_cast<std::uint32_t>(v));
    grid.dropouts = mxent::parse_real_list_or_range(args.dropout_range);
    grid.seeds_per_cell = args.seeds_per_cell;
    grid.base_seed = args.seed;

    mxent::SweepOptions opts;
    opts.jobs = args.jobs;
    opts.record_timings = args.timings;
    opts.tol = args.tol;
    opts.max_iter = args.max_iter;

    const auto records = mxent::run_sweep(grid, opts);
    std::ofstream out(args.output);
    if (!out) throw std::runtime_error("cannot open for writing: " + args.output);
    mxent::write_sweep_csv(records, out);

    std::size_t failed = 0;
    for (const auto& r : records)
        if (r.status != "ok") ++failed;
    if (failed > 0)
        std::cerr << "warning: " << failed << " of " << records.size()
                  << " tasks recorded a failure status\n";

    const mxent::TrendStats trend = mxent::trend_stats(records);
    const auto print_stat = [](const char* name, const std::optional<double>& value) {
        std::cout << name << '='
                  << (value ? mxent::format_real(*value) : std::string("undefined")) << '\n';
    };
    std::cout << "records=" << records.size() << " ok=" << (records.size() - failed) << '\n';
    print_stat("spearman_d_intensity", trend.spearman_dropout_intensity);
    print_stat("spearman_d_homogeneity", trend.spearman_dropout_homogeneity);
    print_stat("pearson_d_intensity", trend.pearson_dropout_intensity);
    return 0;
}

struct StatsArgs {
    std::string input;
    std::string name;
    bool src_first = false;
    bool directed = false;
};

int cmd_stats(const StatsArgs& args) {
    mxent::EdgeListFormat fmt;
    fmt.order = args.src_first ? mxent::ColumnOrder::SrcFirst : mxent::ColumnOrder::LayerFirst;
    fmt.directed = args.directed;
    const mxent::MultiplexNetwork net = mxent::parse_multiplex_edgelist(args.input, fmt);
    const mxent::NetworkSummary s = mxent::summarize(net);
    std::cout << dataset_name(args.name, args.input) << ',' << s.nodes << ',' << s.edges << ','
              << s.layers << ',' << mxent::format_real(s.mean_degree) << ',' << s.components
              << '\n';
    return 0;
}

struct PlotArgs {
    std::string input;
    std::string output;
    mxent::PlotSpec spec;
};

int cmd_plot(const PlotArgs& args) {
    const mxent::CsvTable table = mxent::read_csv_file(args.input);
    const std::string svg = mxent::render_scatter_svg(table, args.spec);
    std::ofstream out(args.output);
    if (!out) throw std::runtime_error("cannot open for writing: " + args.output);
    out << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplex layer entanglement toolkit"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand(
        "analyze", "compute per-component layer entanglement measures, write CSV");
    analyze->add_option("input", analyze_args.input, "multiplex edge-list file")->required();
    analyze->add_flag("--src-first", analyze_args.src_first,
                      "columns are 'src dst layer [weight]' (default: layer first)");
    analyze->add_flag("--directed", analyze_args.directed,
                      "keep arc direction when parsing (stats only; co-occurrence is unordered)");
    analyze->add_flag("--per-block", analyze_args.per_block,
                      "also emit one row per LIN block");
    analyze->add_option("--tol", analyze_args.tol, "power iteration tolerance")
        ->default_val(1e-10);
    analyze->add_option("--max-iter", analyze_args.max_iter, "power iteration cap")
        ->default_val(100000);
    analyze->add_option("--output", analyze_args.output, "output CSV path (default: stdout)");
    analyze->add_option("--name", analyze_args.name,
                        "dataset name for the CSV (default: input stem)");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "generate a random multiplex network");
    generate->add_option("--nodes", generate_args.nodes, "node count v")->required();
    generate->add_option("--layers", generate_args.layers, "layer count k")->required();
    generate->add_option("--dropout", generate_args.dropout, "edge dropout d in [0,1]")
        ->required();
    generate->add_option("--seed", generate_args.seed, "rng seed")->default_val(0);
    generate->add_option("--output", generate_args.output,
                         "edge-list output path (metadata goes to PATH.meta)")
        ->required();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "run a generator/analysis parameter sweep");
    sweep->add_option("--nodes-list", sweep_args.nodes_list, "node counts, e.g. 10,25,50")
        ->required();
    sweep->add_option("--layers-list", sweep_args.layers_list, "layer counts, e.g. 3,5,8")
        ->required();
    sweep->add_option("--dropout-range", sweep_args.dropout_range,
                      "dropouts, '0.05:0.95:0.05' or '0.1,0.5,0.9'")
        ->required();
    sweep->add_option("--seeds-per-cell", sweep_args.seeds_per_cell, "seeds per grid cell")
        ->default_val(1);
    sweep->add_option("--seed", sweep_args.seed, "base seed (task seed = base + task index)")
        ->default_val(0);
    sweep->add_option("--jobs", sweep_args.jobs, "worker threads (0: hardware)")
        ->default_val(1);
    sweep->add_flag("--timings", sweep_args.timings,
                    "record wall times in gen_ms/analyze_ms (off keeps output reproducible)");
    sweep->add_option("--tol", sweep_args.tol, "power iteration tolerance")->default_val(1e-10);
    sweep->add_option("--max-iter", sweep_args.max_iter, "power iteration cap")
        ->default_val(100000);
    sweep->add_option("--output", sweep_args.output, "output CSV path")->required();

    StatsArgs stats_args;
    auto* stats = app.add_subcommand(
        "stats", "print 'dataset,nodes,edges,layers,mean_degree,components' for a file");
    stats->add_option("input", stats_args.input, "multiplex edge-list file")->required();
    stats->add_flag("--src-first", stats_args.src_first,
                    "columns are 'src dst layer [weight]' (default: layer first)");
    stats->add_flag("--directed", stats_args.directed, "keep arc direction when parsing");
    stats->add_option("--name", stats_args.name, "dataset name (default: input stem)");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "render a CSV scatter plot as SVG");
    plot->add_option("--input", plot_args.input, "input CSV path")->required();
    plot->add_option("--x", plot_args.spec.x_column, "x column name")->required();
    plot->add_option("--y", plot_args.spec.y_column, "y column name")->required();
    plot->add_option("--color-by", plot_args.spec.color_column,
                     "categorical column for point colors");
    plot->add_option("--x-min", plot_args.spec.x_min, "x axis lower bound")->default_val(0.0);
    plot->add_option("--x-max", plot_args.spec.x_max, "x axis upper bound")->default_val(1.0);
    plot->add_option("--y-min", plot_args.spec.y_min, "y axis lower bound")->default_val(0.0);
    plot->add_option("--y-max", plot_args.spec.y_max, "y axis upper bound")->default_val(1.0);
    plot->add_option("--output", plot_args.output, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_args);
        if (generate->parsed()) return cmd_generate(generate_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (stats->parsed()) return cmd_stats(stats_args);
        if (plot->parsed()) return cmd_plot(plot_args);
    } catch (const mxent::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
