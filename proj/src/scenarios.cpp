#include "influence/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "influence/error.hpp"

namespace influence {

void validate_fractions(std::span<const double> fractions) {
  if (fractions.size() < 2) throw Error(ErrorKind::configuration, "scenario.fractions: need at least two opinions");
  double total = 0.0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (!(fractions[k] >= 0.0)) {
      throw Error(ErrorKind::configuration, "scenario.fractions: entry " + std::to_string(k) + " is negative");
    }
    total += fractions[k];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::configuration, "scenario.fractions: must sum to 1, got " + std::to_string(total));
  }
}

std::vector<std::size_t> largest_remainder_counts(std::size_t n, std::span<const double> fractions) {
  validate_fractions(fractions);
  std::vector<std::size_t> counts(fractions.size());
  std::vector<double> remainder(fractions.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double exact = fractions[k] * static_cast<double>(n);
    // Snap values that are integral up to rounding noise (0.44 * 900 = 395.99...).
    const double snapped = std::abs(exact - std::round(exact)) < 1e-9 ? std::round(exact) : exact;
    counts[k] = static_cast<std::size_t>(std::floor(snapped));
    remainder[k] = snapped - std::floor(snapped);
    assigned += counts[k];
  }
  std::vector<std::size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[order[i % order.size()]];
  return counts;
}

Assignment init_random_uniform(std::size_t n, int num_opinions, Rng& rng) {
  if (num_opinions < 2 || num_opinions > kMaxOpinions) {
    throw Error(ErrorKind::configuration, "game.num_opinions: must be in [2, " + std::to_string(kMaxOpinions) + "]");
  }
  Assignment out(n);
  for (auto& o : out) o = static_cast<OpinionId>(rng.below(static_cast<std::uint64_t>(num_opinions)));
  return out;
}

Assignment init_fractions(std::size_t n, std::span<const double> fractions, Rng& rng) {
  const auto counts = largest_remainder_counts(n, fractions);
  Assignment out;
  out.reserve(n);
  for (std::size_t k = 0; k < counts.size(); ++k) out.insert(out.end(), counts[k], static_cast<OpinionId>(k));
  shuffle(std::span<OpinionId>(out), rng);
  return out;
}

Assignment init_droplet(const Graph& lattice, OpinionId minority, OpinionId majority, double droplet_fraction) {
  const Lattice2d* shape = lattice.lattice();
  if (shape == nullptr) {
    throw Error(ErrorKind::unsupported_topology, "droplet initialization requires a lattice topology");
  }
  if (!(droplet_fraction > 0.0 && droplet_fraction < 1.0)) {
    throw Error(ErrorKind::configuration, "scenario.droplet_fraction: must be in (0, 1)");
  }
  const double cells = droplet_fraction * static_cast<double>(lattice.size());
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(cells) - 1e-9)));
  const int height = std::min(side, shape->rows - 1);
  const int width = std::min(side, shape->cols - 1);
  const int top = (shape->rows - height) / 2;
  const int left = (shape->cols - width) / 2;

  Assignment out(lattice.size(), majority);
  for (int r = top; r < top + height; ++r) {
    for (int c = left; c < left + width; ++c) out[static_cast<std::size_t>(r * shape->cols + c)] = minority;
  }
  return out;
}

Assignment init_degree_preferential(const Graph& graph, std::size_t opinion_a_count) {
  if (opinion_a_count > graph.size()) {
    throw Error(ErrorKind::configuration, "opinion A count " + std::to_string(opinion_a_count) +
                                              " exceeds node count " + std::to_string(graph.size()));
  }
  std::vector<NodeId> order(graph.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return graph.degree(a) > graph.degree(b); });
  Assignment out(graph.size(), OpinionId{1});
  for (std::size_t i = 0; i < opinion_a_count; ++i) out[order[i]] = 0;
  return out;
}

std::vector<AgentState> apply_committed(const Assignment& assignment, std::optional<OpinionId> committed,
                                        const GameParams& params) {
  std::vector<AgentState> agents;
  agents.reserve(assignment.size());
  for (OpinionId o : assignment) {
    agents.push_back(AgentState{
        .opinion = o,
        .budget = params.initial_budget,
        .change_cost = params.default_change_cost,
        .committed = committed.has_value() && *committed == o,
    });
  }
  return agents;
}

Assignment build_assignment(const ScenarioSpec& spec, const Graph& graph, int num_opinions, Rng& rng) {
  switch (spec.kind) {
    case ScenarioKind::random_uniform:
      return init_random_uniform(graph.size(), num_opinions, rng);
    case ScenarioKind::fractions:
      if (spec.fractions.size() != static_cast<std::size_t>(num_opinions)) {
        throw Error(ErrorKind::configuration, "scenario.fractions: needs one entry per opinion");
      }
      return init_fractions(graph.size(), spec.fractions, rng);
    case ScenarioKind::droplet:
      return init_droplet(graph, spec.droplet_minority, spec.droplet_majority, spec.droplet_fraction);
    case ScenarioKind::degree_preferential: {
      if (spec.fractions.empty()) throw Error(ErrorKind::configuration, "scenario.fractions: opinion A share missing");
      const double share = spec.fractions[0];
      if (!(share >= 0.0 && share <= 1.0)) throw Error(ErrorKind::configuration, "scenario.fractions.A: must be in [0, 1]");
      return init_degree_preferential(graph, largest_remainder_counts(graph.size(), std::vector{share, 1.0 - share})[0]);
    }
  }
  throw Error(ErrorKind::configuration, "unknown scenario kind");
}

}  // namespace influence
