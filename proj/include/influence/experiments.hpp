#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "influence/engine.hpp"
#include "influence/metrics.hpp"
#include "influence/scenarios.hpp"

namespace influence {

/// Flat "section.key" -> raw value map, the form a config file is parsed into
/// and that --set overrides and sweeps edit before validation.
using KeyValues = std::map<std::string, std::string>;

enum class TopologyKind { lattice, barabasi_albert };

struct TopologySpec {
  TopologyKind kind = TopologyKind::lattice;
  int rows = 30;
  int cols = 30;
  std::size_t n = 1000;
  int m = 4;
};

struct ExperimentConfig {
  TopologySpec topology;
  GameParams game;
  ScenarioSpec scenario;
  int runs = 1;
  std::uint64_t master_seed = 1;
  std::int64_t sample_every = 50;
  std::optional<std::int64_t> snapshot_every;
  bool early_stop = false;

  KeyValues source;  // validated keys the config was built from
};

/// Parses the sectioned key-value text. Errors carry `origin` and a line number.
KeyValues parse_key_values(std::string_view text, std::string_view origin = "<config>");

/// Canonical form of a key: opinion labels in `game.offer_amount.X` and
/// `scenario.fractions.X` become numeric ids. Unknown keys are rejected.
std::string canonical_key(std::string_view key);

/// Applies "key=value" on top of `kv` after checking the key against the schema.
void apply_override(KeyValues& kv, std::string_view assignment);

/// Validates every field and fills defaults.
ExperimentConfig config_from_key_values(const KeyValues& kv);

ExperimentConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// "A".."Z" or a decimal id.
OpinionId parse_opinion(std::string_view label);

/// Per-run seeds: seed[i] = mix64(master + (i + 1) * golden), pairwise distinct
/// and prefix-stable.
std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master_seed, std::size_t count);

/// Master seed for cell `value_index` of a sweep.
std::uint64_t derive_cell_seed(std::uint64_t master_seed, std::size_t value_index);

/// Graph for one run. Lattices ignore the seed; BA graphs draw from the
/// run's kGraphStream.
Graph build_graph(const TopologySpec& spec, std::uint64_t run_seed);

struct Snapshot {
  std::int64_t t = 0;
  std::vector<OpinionId> opinions;
};

struct RunOutput {
  RunSummary summary;
  std::vector<MetricsSample> samples;
  std::vector<Snapshot> snapshots;
};

struct BatchOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  bool keep_samples = true;
  bool check_invariants = false;
  std::optional<std::vector<std::uint64_t>> seeds;  // replaces derive_run_seeds when set
};

struct BatchResult {
  int num_opinions = 2;
  std::vector<RunOutput> runs;  // ordered by run index
};

/// Executes config.runs independent games, possibly in parallel. Each run is
/// settled before it is summarized.
BatchResult run_batch(const ExperimentConfig& config, const BatchOptions& options = {});

struct SweepSpec {
  std::string param;
  std::vector<std::string> values;
  int runs_per_value = 0;  // 0 = config.runs
};

struct SweepRow {
  std::string param;
  std::string value;
  int runs = 0;
  double frac_not_absorbed = 0.0;
  double mean_final_p_a = 0.0;
  std::optional<double> mean_t_absorb;
};

SweepRow aggregate(std::string param, std::string value, std::span<const RunSummary> summaries);

std::vector<SweepRow> sweep(const ExperimentConfig& config, const SweepSpec& spec,
                            const std::function<void(const SweepRow&)>& progress = {},
                            const BatchOptions& options = {});

void write_summary_csv(const BatchResult& batch, std::ostream& out);
void write_timeseries_csv(const BatchResult& batch, std::ostream& out);
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
void write_summary_csv(const BatchResult& batch, const std::filesystem::path& path);
void write_timeseries_csv(const BatchResult& batch, const std::filesystem::path& path);
void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

/// Lattice: "# t=<t> rows=<R> cols=<C>" then R comma-separated lines.
/// Other graphs: one "node_id,opinion" line per node.
void write_snapshot(const Graph& graph, const Snapshot& snap, std::ostream& out);

}  // namespace influence
