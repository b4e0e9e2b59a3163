#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "influence/engine.hpp"
#include "influence/graph.hpp"

namespace influence {

std::vector<double> opinion_fractions(const GameState& state);

/// Connected components of the subgraph induced by each opinion's holders,
/// over direct graph edges.
std::vector<std::size_t> components_per_opinion(const Graph& graph, std::span<const OpinionId> opinions,
                                                int num_opinions);
std::vector<std::size_t> components_per_opinion(const GameState& state);

std::optional<OpinionId> is_absorbed(const GameState& state);

/// Running homophily/influence flip counts.
struct FlipTally {
  std::uint64_t homophily = 0;
  std::uint64_t influence = 0;

  void add(const InteractionRecord& rec) noexcept {
    if (rec.attribution == Attribution::homophily) ++homophily;
    if (rec.attribution == Attribution::influence) ++influence;
  }
};

struct MetricsSample {
  std::int64_t t = 0;
  std::vector<double> fractions;
  std::vector<std::size_t> components;
  FlipTally flips;

  /// Holders per component for opinion k; 0 when the opinion is absent.
  double mean_component_size(std::size_t k, std::size_t n) const;
};

MetricsSample sample_metrics(const GameState& state, const FlipTally& flips);

struct BudgetSummary {
  Currency min = 0.0;
  Currency mean = 0.0;
  Currency max = 0.0;
};

BudgetSummary summarize_budgets(const GameState& state);

struct RunSummary {
  std::uint64_t seed = 0;
  bool absorbed = false;
  std::optional<OpinionId> winner;
  std::optional<std::int64_t> t_absorb;
  std::vector<double> final_fractions;
  std::vector<std::size_t> final_components;
  FlipTally flips;
  BudgetSummary budgets;
};

/// Builds a summary from a complete trajectory and the state it ended in. The
/// absorption round is recovered by undoing the recorded flips backwards.
RunSummary summarize_run(std::span<const InteractionRecord> trajectory, const GameState& final_state,
                         std::uint64_t seed);

}  // namespace influence
