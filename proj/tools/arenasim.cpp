// Command-line driver for the attention-arena simulator, the parameter-sweep
// harness, and the hourly view-count analyzer.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arena/empirical.hpp"
#include "arena/metrics.hpp"
#include "arena/model.hpp"
#include "arena/sweep.hpp"
#include "arena/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() +
                                       " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// All outputs of a command are staged in memory and flushed together, so a
// failed command leaves no partial output set behind.
struct OutputSet {
    fs::path dir;
    bool overwrite = false;
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::string& name, std::string content) {
        files.emplace_back(name, std::move(content));
    }
    void flush() const {
        fs::create_directories(dir);
        if (!overwrite) {
            for (const auto& [name, content] : files) {
                if (fs::exists(dir / name))
                    throw std::runtime_error(
                        (dir / name).string() +
                        " exists (pass --overwrite to replace)");
            }
        }
        for (const auto& [name, content] : files)
            write_file(dir / name, content);
    }
};

ordered_json params_json(const arena::ModelParams& p) {
    return {{"alpha", p.alpha},           {"n", p.n},
            {"c", p.c},                   {"iterations", p.iterations},
            {"seed", p.seed},             {"burn_in", p.burn_in}};
}

int cmd_simulate(const arena::ModelParams& params, OutputSet& outputs) {
    params.validate();
    arena::RunTrace trace = arena::run(params);
    arena::MetricsSummary summary = arena::summarize(trace);

    std::ostringstream trace_csv, events_csv;
    arena::write_trace_csv(trace, trace_csv);
    arena::write_events_csv(trace, events_csv);
    outputs.add("trace.csv", trace_csv.str());
    outputs.add("events.csv", events_csv.str());
    outputs.add("summary.json", arena::summary_to_json(summary, params));

    ordered_json manifest;
    manifest["mode"] = "simulate";
    manifest["params"] = params_json(params);
    manifest["outputs"] = {"trace.csv", "events.csv", "summary.json"};
    outputs.add("manifest.json", manifest.dump(2) + "\n");
    outputs.flush();
    return 0;
}

int cmd_sweep(const arena::SweepGrid& grid, int stackplot_max_t,
              unsigned threads, OutputSet& outputs) {
    auto rows = arena::run_sweep(grid, threads);
    std::ostringstream aggregate_csv;
    arena::write_aggregate_csv(rows, aggregate_csv);
    outputs.add("aggregate.csv", aggregate_csv.str());

    std::vector<std::string> stackplot_names;
    if (stackplot_max_t > 0) {
        for (int n : grid.ns) {
            for (double c : grid.cs) {
                for (double alpha : grid.alphas) {
                    arena::ModelParams params;
                    params.alpha = alpha;
                    params.n = n;
                    params.c = c;
                    params.iterations = grid.iterations;
                    params.burn_in = grid.burn_in;
                    params.seed = grid.seeds.front();
                    arena::RunTrace trace = arena::run(params);
                    std::ostringstream csv;
                    arena::write_stackplot_csv(trace, stackplot_max_t, csv);
                    char name[96];
                    std::snprintf(name, sizeof(name),
                                  "stackplot_n%d_c%g_alpha%g.csv", n, c,
                                  alpha);
                    outputs.add(name, csv.str());
                    stackplot_names.emplace_back(name);
                }
            }
        }
    }

    ordered_json manifest;
    manifest["mode"] = "sweep";
    manifest["grid"] = {{"alphas", grid.alphas}, {"ns", grid.ns},
                        {"cs", grid.cs},         {"iterations", grid.iterations},
                        {"burn_in", grid.burn_in}, {"seeds", grid.seeds}};
    if (stackplot_max_t > 0) manifest["stackplot_max_t"] = stackplot_max_t;
    ordered_json out_list = {"aggregate.csv"};
    for (const auto& name : stackplot_names) out_list.push_back(name);
    manifest["outputs"] = out_list;
    outputs.add("manifest.json", manifest.dump(2) + "\n");
    outputs.flush();
    return 0;
}

int cmd_empirical(const fs::path& input, int min_videos, OutputSet& outputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input " + input.string());
    auto channels = arena::load_dataset(in);

    std::vector<arena::ChannelDataset> kept;
    for (auto& channel : channels) {
        if (static_cast<int>(channel.videos.size()) < min_videos) {
            std::cerr << "note: skipping channel '" << channel.channel_id
                      << "' (" << channel.videos.size() << " videos < "
                      << min_videos << ")\n";
            continue;
        }
        kept.push_back(std::move(channel));
    }

    std::ostringstream videos_csv, channels_csv, profiles_csv;
    arena::write_video_metrics_csv(kept, videos_csv);
    arena::write_channel_summary_csv(kept, channels_csv);
    arena::write_profile_csv(kept, profiles_csv);
    outputs.add("videos.csv", videos_csv.str());
    outputs.add("channels.csv", channels_csv.str());
    outputs.add("profiles.csv", profiles_csv.str());

    ordered_json manifest;
    manifest["mode"] = "empirical";
    manifest["input"] = input.string();
    manifest["min_videos"] = min_videos;
    manifest["outputs"] = {"videos.csv", "channels.csv", "profiles.csv"};
    outputs.add("manifest.json", manifest.dump(2) + "\n");
    outputs.flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attention-arena simulator and analysis toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "Run one simulation and write trace, events and summary");
    std::string sim_config;
    arena::ModelParams params;
    sim->add_option("--config", sim_config, "JSON file with model parameters");
    auto* opt_alpha = sim->add_option("--alpha", params.alpha, "trendiness boost (>= 0)");
    auto* opt_n = sim->add_option("--n", params.n, "population size (>= 2)");
    auto* opt_c = sim->add_option("--c", params.c, "noise-size parameter (> 0)");
    auto* opt_iter = sim->add_option("--iterations", params.iterations,
                                     "total timesteps (>= 2)");
    auto* opt_seed = sim->add_option("--seed", params.seed, "RNG seed");
    auto* opt_burn = sim->add_option("--burn-in", params.burn_in,
                                     "iterations excluded from metrics");
    std::string sim_out = ".";
    bool sim_overwrite = false;
    sim->add_option("--out", sim_out, "output directory");
    sim->add_flag("--overwrite", sim_overwrite, "replace existing outputs");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Run a parameter grid across seeds and aggregate metrics");
    std::string grid_path;
    sweep->add_option("--grid", grid_path, "grid JSON file")->required();
    int stackplot_max_t = 0;
    sweep->add_option("--emit-stackplots", stackplot_max_t,
                      "also write per-cell stackplot CSVs up to this t");
    unsigned sweep_threads = 0;
    sweep->add_option("--threads", sweep_threads,
                      "worker threads (0 = hardware)");
    std::string sweep_out = ".";
    bool sweep_overwrite = false;
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_flag("--overwrite", sweep_overwrite, "replace existing outputs");

    // empirical
    auto* emp = app.add_subcommand(
        "empirical", "Analyze an hourly view-count dataset grouped by channel");
    std::string emp_input;
    emp->add_option("--input", emp_input, "input CSV file")->required();
    int min_videos = 1;
    emp->add_option("--min-videos", min_videos,
                    "skip channels with fewer videos");
    std::string emp_out = ".";
    bool emp_overwrite = false;
    emp->add_option("--out", emp_out, "output directory");
    emp->add_flag("--overwrite", emp_overwrite, "replace existing outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (!sim_config.empty()) {
                // Config file provides defaults; explicit flags override.
                auto j = nlohmann::json::parse(read_file(sim_config));
                arena::ModelParams from_file;
                if (j.contains("alpha")) j.at("alpha").get_to(from_file.alpha);
                if (j.contains("n")) j.at("n").get_to(from_file.n);
                if (j.contains("c")) j.at("c").get_to(from_file.c);
                if (j.contains("iterations"))
                    j.at("iterations").get_to(from_file.iterations);
                if (j.contains("seed")) j.at("seed").get_to(from_file.seed);
                if (j.contains("burn_in"))
                    j.at("burn_in").get_to(from_file.burn_in);
                if (!opt_alpha->count()) params.alpha = from_file.alpha;
                if (!opt_n->count()) params.n = from_file.n;
                if (!opt_c->count()) params.c = from_file.c;
                if (!opt_iter->count()) params.iterations = from_file.iterations;
                if (!opt_seed->count()) params.seed = from_file.seed;
                if (!opt_burn->count()) params.burn_in = from_file.burn_in;
            }
            OutputSet outputs{sim_out, sim_overwrite};
            return cmd_simulate(params, outputs);
        }
        if (sweep->parsed()) {
            arena::SweepGrid grid = arena::parse_grid(read_file(grid_path));
            OutputSet outputs{sweep_out, sweep_overwrite};
            return cmd_sweep(grid, stackplot_max_t, sweep_threads, outputs);
        }
        if (emp->parsed()) {
            OutputSet outputs{emp_out, emp_overwrite};
            return cmd_empirical(emp_input, min_videos, outputs);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
