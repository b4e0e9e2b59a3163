#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "influence/engine.hpp"
#include "influence/metrics.hpp"

namespace influence {

// Sub-streams derived from a run seed with stream_seed().
inline constexpr std::uint64_t kGraphStream = 1;
inline constexpr std::uint64_t kInitStream = 2;
inline constexpr std::uint64_t kDynamicsStream = 3;

struct RunOptions {
  bool early_stop = false;        // stop once one opinion holds every agent
  std::int64_t sample_every = 0;  // 0 disables time-series sampling
  bool record_trajectory = false;
  bool check_invariants = false;  // recount opinions and budgets after every step
  std::int64_t snapshot_every = 0;
  std::function<void(const GameState&)> on_snapshot;
};

struct RunResult {
  GameState final_state;
  std::vector<InteractionRecord> trajectory;
  std::vector<MetricsSample> samples;
  FlipTally flips;
  std::optional<std::int64_t> t_absorb;
};

/// Plays params.rounds interactions (fewer with early_stop) from `agents`.
/// The dynamics draw from stream kDynamicsStream of `seed`.
RunResult run(std::shared_ptr<const Topology> topology, const GameParams& params, std::vector<AgentState> agents,
              std::uint64_t seed, const RunOptions& options = {});

/// Summary from the incremental tallies kept by run(); agrees with
/// summarize_run() over the full trajectory.
RunSummary summarize(const RunResult& result, std::uint64_t seed);

}  // namespace influence
