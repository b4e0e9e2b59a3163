#include "influence/metrics.hpp"

#include <algorithm>
#include <ranges>

namespace influence {

std::vector<double> opinion_fractions(const GameState& state) {
  const auto counts = state.opinion_counts();
  std::vector<double> out(counts.size());
  const auto n = static_cast<double>(state.size());
  for (std::size_t k = 0; k < counts.size(); ++k) out[k] = static_cast<double>(counts[k]) / n;
  return out;
}

std::vector<std::size_t> components_per_opinion(const Graph& graph, std::span<const OpinionId> opinions,
                                                int num_opinions) {
  std::vector<std::size_t> out(static_cast<std::size_t>(num_opinions), 0);
  std::vector<char> seen(graph.size(), 0);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < graph.size(); ++root) {
    if (seen[root]) continue;
    const OpinionId colour = opinions[root];
    ++out[colour];
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : graph.neighbors(u)) {
        if (!seen[w] && opinions[w] == colour) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return out;
}

std::vector<std::size_t> components_per_opinion(const GameState& state) {
  std::vector<OpinionId> opinions;
  opinions.reserve(state.size());
  for (const auto& a : state.agents()) opinions.push_back(a.opinion);
  return components_per_opinion(state.graph(), opinions, state.params().num_opinions);
}

std::optional<OpinionId> is_absorbed(const GameState& state) {
  const auto counts = state.opinion_counts();
  const auto it = std::find(counts.begin(), counts.end(), state.size());
  if (it == counts.end()) return std::nullopt;
  return static_cast<OpinionId>(it - counts.begin());
}

double MetricsSample::mean_component_size(std::size_t k, std::size_t n) const {
  if (components[k] == 0) return 0.0;
  return fractions[k] * static_cast<double>(n) / static_cast<double>(components[k]);
}

MetricsSample sample_metrics(const GameState& state, const FlipTally& flips) {
  return MetricsSample{
      .t = state.round(),
      .fractions = opinion_fractions(state),
      .components = components_per_opinion(state),
      .flips = flips,
  };
}

BudgetSummary summarize_budgets(const GameState& state) {
  const auto agents = state.agents();
  if (agents.empty()) return {};
  BudgetSummary s{agents.front().budget, 0.0, agents.front().budget};
  for (const auto& a : agents) {
    s.min = std::min(s.min, a.budget);
    s.max = std::max(s.max, a.budget);
    s.mean += a.budget;
  }
  s.mean /= static_cast<double>(agents.size());
  return s;
}

RunSummary summarize_run(std::span<const InteractionRecord> trajectory, const GameState& final_state,
                         std::uint64_t seed) {
  RunSummary s;
  s.seed = seed;
  s.winner = is_absorbed(final_state);
  s.absorbed = s.winner.has_value();
  s.final_fractions = opinion_fractions(final_state);
  s.final_components = components_per_opinion(final_state);
  s.budgets = summarize_budgets(final_state);
  for (const auto& rec : trajectory) s.flips.add(rec);

  if (s.absorbed) {
    const auto n = final_state.size();
    std::vector<std::size_t> counts(final_state.opinion_counts().begin(), final_state.opinion_counts().end());
    s.t_absorb = trajectory.empty() ? final_state.round() : trajectory.front().round;
    for (const auto& rec : trajectory | std::views::reverse) {
      if (rec.accepted && rec.speaker_opinion != rec.listener_opinion_before) {
        --counts[rec.speaker_opinion];
        ++counts[rec.listener_opinion_before];
      }
      if (counts[*s.winner] != n) {
        s.t_absorb = rec.round + 1;
        break;
      }
    }
  }
  return s;
}

}  // namespace influence
