#include "influence/run.hpp"

#include <stdexcept>
#include <string>

namespace influence {

namespace {

void check(const GameState& state) {
  if (!state.counts_consistent()) {
    throw std::logic_error("opinion counts diverged from recount at round " + std::to_string(state.round()));
  }
  if (!state.budgets_consistent()) {
    throw std::logic_error("budget accounting violated at round " + std::to_string(state.round()));
  }
}

bool due(std::int64_t t, std::int64_t every) { return every > 0 && t % every == 0; }

}  // namespace

RunResult run(std::shared_ptr<const Topology> topology, const GameParams& params, std::vector<AgentState> agents,
              std::uint64_t seed, const RunOptions& options) {
  RunResult result{GameState(std::move(topology), params, std::move(agents)), {}, {}, {}, {}};
  GameState& state = result.final_state;
  Rng rng(stream_seed(seed, kDynamicsStream));

  if (options.record_trajectory) result.trajectory.reserve(static_cast<std::size_t>(params.rounds));
  if (options.check_invariants) check(state);

  if (is_absorbed(state)) result.t_absorb = state.round();
  if (due(state.round(), options.sample_every)) result.samples.push_back(sample_metrics(state, result.flips));
  if (options.on_snapshot && due(state.round(), options.snapshot_every)) options.on_snapshot(state);

  while (!state.finished()) {
    if (options.early_stop && result.t_absorb) break;

    const InteractionRecord rec = state.step(rng);
    result.flips.add(rec);
    if (options.record_trajectory) result.trajectory.push_back(rec);
    if (options.check_invariants) check(state);

    const std::int64_t t = state.round();
    if (!result.t_absorb && rec.accepted && rec.speaker_opinion != rec.listener_opinion_before &&
        state.opinion_counts()[rec.speaker_opinion] == state.size()) {
      result.t_absorb = t;
    }
    if (due(t, options.sample_every)) result.samples.push_back(sample_metrics(state, result.flips));
    if (options.on_snapshot && due(t, options.snapshot_every)) options.on_snapshot(state);
  }

  if (options.sample_every > 0 && result.samples.back().t != state.round()) {
    result.samples.push_back(sample_metrics(state, result.flips));
  }
  return result;
}

RunSummary summarize(const RunResult& result, std::uint64_t seed) {
  const GameState& state = result.final_state;
  RunSummary s;
  s.seed = seed;
  s.winner = is_absorbed(state);
  s.absorbed = s.winner.has_value();
  s.t_absorb = s.absorbed ? result.t_absorb : std::nullopt;
  s.final_fractions = opinion_fractions(state);
  s.final_components = components_per_opinion(state);
  s.flips = result.flips;
  s.budgets = summarize_budgets(state);
  return s;
}

}  // namespace influence
