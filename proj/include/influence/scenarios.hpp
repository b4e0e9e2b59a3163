#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "influence/engine.hpp"
#include "influence/graph.hpp"
#include "influence/rng.hpp"

namespace influence {

using Assignment = std::vector<OpinionId>;

enum class ScenarioKind { random_uniform, fractions, droplet, degree_preferential };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::random_uniform;
  // Per-opinion initial fractions for `fractions`; entry 0 also sets the
  // opinion-0 share for `degree_preferential`.
  std::vector<double> fractions;
  double droplet_fraction = 0.09;
  OpinionId droplet_minority = 0;
  OpinionId droplet_majority = 1;
  std::optional<OpinionId> committed;  // every holder of this opinion is committed
};

/// Validates that fractions are nonnegative and sum to 1 within 1e-9.
void validate_fractions(std::span<const double> fractions);

/// Integer counts summing to n: floor(n * f_k), with the leftover units given
/// to the largest remainders (ties to the lower opinion id).
std::vector<std::size_t> largest_remainder_counts(std::size_t n, std::span<const double> fractions);

Assignment init_random_uniform(std::size_t n, int num_opinions, Rng& rng);

/// Exact largest-remainder counts, positions shuffled.
Assignment init_fractions(std::size_t n, std::span<const double> fractions, Rng& rng);

/// Centered square block of the minority opinion on a lattice graph. Side is
/// ceil(sqrt(fraction * n)) clamped to (rows-1) x (cols-1).
Assignment init_droplet(const Graph& lattice, OpinionId minority, OpinionId majority, double droplet_fraction);

/// The `opinion_a_count` highest-degree nodes (ties by ascending id) hold
/// opinion 0; the rest hold opinion 1.
Assignment init_degree_preferential(const Graph& graph, std::size_t opinion_a_count);

/// Agent states with the game's initial budget and change cost; holders of
/// `committed` (if any) are flagged committed.
std::vector<AgentState> apply_committed(const Assignment& assignment, std::optional<OpinionId> committed,
                                        const GameParams& params);

/// Dispatches on spec.kind.
Assignment build_assignment(const ScenarioSpec& spec, const Graph& graph, int num_opinions, Rng& rng);

}  // namespace influence
