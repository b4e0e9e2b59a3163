// Command-line driver: run batches, sweep one parameter, plot CSVs as SVG and
// dump topologies.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime or I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "influence/error.hpp"
#include "influence/experiments.hpp"
#include "influence/plot.hpp"

namespace fs = std::filesystem;
using namespace influence;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

struct CommonArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
};

void add_common(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--config", args.config, "Experiment config file")->required();
  cmd.add_option("--set", args.overrides, "Override a config key (KEY=VALUE), repeatable");
  cmd.add_option("--out", args.out, "Output directory");
  cmd.add_option("--seed", args.seed, "Master seed (overrides master_seed)");
  cmd.add_option("--runs", args.runs, "Number of runs (overrides runs)");
}

// --seed and --runs are sugar for --set and go through the same validator.
ExperimentConfig load(const CommonArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  if (args.seed) overrides.push_back("master_seed=" + std::to_string(*args.seed));
  if (args.runs) overrides.push_back("runs=" + std::to_string(*args.runs));
  return load_config(args.config, overrides);
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::size_t digits(std::uint64_t v) { return std::to_string(v).size(); }

std::string opinion_label(OpinionId id) {
  return id < 26 ? std::string(1, static_cast<char>('A' + id)) : std::to_string(id);
}

int cmd_run(const CommonArgs& args) {
  const ExperimentConfig config = load(args);
  const fs::path dir = prepare_dir(args.out);
  const BatchResult batch = run_batch(config);

  write_summary_csv(batch, dir / "summary.csv");
  write_timeseries_csv(batch, dir / "timeseries.csv");

  if (config.snapshot_every) {
    const Graph layout = config.topology.kind == TopologyKind::lattice ? build_graph(config.topology, 0) : Graph{};
    const std::size_t run_width = digits(batch.runs.size() - 1);
    const std::size_t t_width = digits(static_cast<std::uint64_t>(config.game.rounds));
    for (std::size_t r = 0; r < batch.runs.size(); ++r) {
      for (const auto& snap : batch.runs[r].snapshots) {
        const fs::path path = dir / fmt::format("snapshot_run{:0{}}_t{:0{}}.csv", r, run_width, snap.t, t_width);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
        write_snapshot(layout, snap, out);
        out.flush();
        if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
      }
    }
  }

  std::size_t absorbed = 0;
  for (const auto& r : batch.runs) absorbed += r.summary.absorbed ? 1 : 0;
  if (batch.runs.size() == 1) {
    const RunSummary& s = batch.runs.front().summary;
    if (s.absorbed) {
      std::cout << "absorbed winner=" << opinion_label(*s.winner) << " t=" << *s.t_absorb << '\n';
    } else {
      std::cout << "not absorbed after t=" << config.game.rounds << '\n';
    }
  } else {
    std::cout << "absorbed " << absorbed << "/" << batch.runs.size() << " runs\n";
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, const std::vector<std::string>& values) {
  const ExperimentConfig config = load(args);
  const fs::path dir = prepare_dir(args.out);
  SweepSpec spec{param, values, config.runs};
  const auto rows = sweep(config, spec, [](const SweepRow& row) {
    std::cout << row.param << "=" << row.value << ": " << row.runs
              << " runs, not absorbed " << fmt::format("{:.3f}", row.frac_not_absorbed)
              << ", mean final p_A " << fmt::format("{:.3f}", row.mean_final_p_a) << std::endl;
  });
  write_sweep_csv(rows, dir / "sweep.csv");
  return 0;
}

int cmd_plot(const std::string& input, const std::string& x, const std::vector<std::string>& y,
             const std::optional<std::string>& group, const std::string& title, const std::string& output) {
  const CsvTable table = read_csv(fs::path(input));
  const std::string svg = render_svg(table, PlotSpec{x, y, group, title});
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + output + " for writing");
  out << svg;
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + output);
  return 0;
}

int cmd_graph_dump(const CommonArgs& args) {
  const ExperimentConfig config = load(args);
  const fs::path dir = prepare_dir(args.out);
  const auto seeds = derive_run_seeds(config.master_seed, 1);
  const Graph graph = build_graph(config.topology, seeds.front());
  const fs::path path = dir / "graph.txt";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  write_edge_list(graph, out);
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
  std::cout << "nodes=" << graph.size() << " edges=" << graph.edge_count() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource-mediated influence game simulator"};
  app.require_subcommand(1);

  CommonArgs run_args;
  auto* run = app.add_subcommand("run", "Run a batch and write summary/timeseries CSVs");
  add_common(*run, run_args);

  CommonArgs sweep_args;
  std::string param;
  std::vector<std::string> values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one config parameter and write sweep.csv");
  add_common(*sweep_cmd, sweep_args);
  sweep_cmd->add_option("--param", param, "Config key to vary, e.g. game.r_k")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

  std::string input, x, output, title;
  std::vector<std::string> y;
  std::optional<std::string> group;
  auto* plot = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
  plot->add_option("--input", input, "Input CSV")->required();
  plot->add_option("--x", x, "X column")->required();
  plot->add_option("--y", y, "Y column(s), comma-separated")->required()->delimiter(',');
  plot->add_option("--group", group, "Split series by this column");
  plot->add_option("--title", title, "Chart title");
  plot->add_option("--output", output, "Output SVG")->required();

  CommonArgs dump_args;
  auto* dump = app.add_subcommand("graph-dump", "Write the topology as an edge list (graph.txt)");
  add_common(*dump, dump_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, param, values);
    if (plot->parsed()) return cmd_plot(input, x, y, group, title, output);
    if (dump->parsed()) return cmd_graph_dump(dump_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::io ? kRuntimeError : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
