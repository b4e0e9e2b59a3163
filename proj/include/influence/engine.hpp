#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "influence/graph.hpp"
#include "influence/rng.hpp"

namespace influence {

using OpinionId = std::uint8_t;
using Currency = double;

/// Upper bound on the number of distinct opinions in one game.
inline constexpr int kMaxOpinions = 32;

/// Which expected-winnings term the listener subtracts when weighing an offer.
///  as_written:            E(O_s, M_l, I_l)
///  listener_own_opinion:  E(O_l, M_l, I_l), the listener's status quo
enum class BaselineVariant { as_written, listener_own_opinion };

struct GameParams {
  Currency reward = 10.0;  // I_W, paid to the global majority at the end
  Currency default_change_cost = 1.0;
  int knowledge_radius = 1;  // r_k
  int influence_radius = 1;  // r_i
  int num_opinions = 2;
  std::vector<Currency> offer_amount = {1.0, 1.0};  // indexed by the speaker's opinion
  Currency initial_budget = 0.0;
  std::int64_t rounds = 50'000;
  bool debit_speaker = false;
  BaselineVariant baseline = BaselineVariant::listener_own_opinion;

  /// Throws Error(configuration) naming the offending field.
  void validate() const;
};

struct AgentState {
  OpinionId opinion = 0;
  Currency budget = 0.0;
  Currency change_cost = 0.0;
  bool committed = false;
};

/// Graph plus the two precomputed neighborhood tables. Immutable and shared
/// read-only between concurrent runs.
struct Topology {
  Graph graph;
  NeighborhoodTable knowledge;
  NeighborhoodTable influence;
  std::optional<int> diameter;  // unset when the graph is too large to measure
};

/// Graphs above this size skip the all-pairs diameter check.
inline constexpr std::size_t kDiameterCheckLimit = 10'000;

/// Precomputes both balls. Radii larger than the diameter are a configuration
/// error when the diameter is known.
std::shared_ptr<const Topology> make_topology(Graph graph, int knowledge_radius, int influence_radius);

enum class Attribution { same_opinion, homophily, influence, rejected };

std::string_view to_string(Attribution a) noexcept;

struct InteractionRecord {
  std::int64_t round = 0;
  NodeId speaker = 0;
  NodeId listener = 0;
  OpinionId speaker_opinion = 0;
  OpinionId listener_opinion_before = 0;
  Currency offer = 0.0;
  double delta_i = 0.0;
  double p_accept = 0.0;
  bool accepted = false;
  Attribution attribution = Attribution::rejected;

  friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

/// Hypothetical assignment used to evaluate a majority "as if" one node held
/// another opinion.
struct OpinionOverride {
  NodeId node;
  OpinionId opinion;
};

class GameState {
 public:
  GameState(std::shared_ptr<const Topology> topology, GameParams params, std::vector<AgentState> agents);

  const Topology& topology() const noexcept { return *topology_; }
  const Graph& graph() const noexcept { return topology_->graph; }
  const GameParams& params() const noexcept { return params_; }

  std::size_t size() const noexcept { return agents_.size(); }
  std::span<const AgentState> agents() const noexcept { return agents_; }
  const AgentState& agent(NodeId v) const noexcept { return agents_[v]; }
  OpinionId opinion(NodeId v) const noexcept { return agents_[v].opinion; }

  std::int64_t round() const noexcept { return round_; }
  bool finished() const noexcept { return round_ >= params_.rounds; }

  /// Per-opinion holder counts, maintained incrementally.
  std::span<const std::size_t> opinion_counts() const noexcept { return counts_; }

  /// Total of all offers paid to listeners so far.
  Currency minted() const noexcept { return minted_; }
  Currency budget_sum() const noexcept;

  /// Recounts opinions from scratch and compares with opinion_counts().
  bool counts_consistent() const;

  /// Budget sum matches the accounting identity for the current debit mode.
  bool budgets_consistent(double tolerance = 1e-9) const;

  /// One interaction: speaker uniform over all agents, listener uniform over
  /// the speaker's influence ball.
  InteractionRecord step(Rng& rng);

  /// Pays the reward to every holder of the unique plurality opinion. No-op
  /// on a tie. Returns the per-agent budgets afterwards.
  std::vector<Currency> settle_rewards();

 private:
  std::shared_ptr<const Topology> topology_;
  GameParams params_;
  std::vector<AgentState> agents_;
  std::vector<std::size_t> counts_;
  std::int64_t round_ = 0;
  Currency minted_ = 0.0;
};

/// Expected end-of-game winnings: reward if the opinion matches the perceived
/// majority, plus the current budget.
constexpr Currency forecast(OpinionId opinion, OpinionId majority, Currency budget, Currency reward) noexcept {
  return (opinion == majority ? reward : 0.0) + budget;
}

/// Most common opinion over the agent's knowledge ball plus the agent itself.
/// Ties go to the agent's own (possibly overridden) opinion when it is among
/// the leaders, otherwise to the lowest OpinionId. An override on a node
/// outside the ball is ignored.
OpinionId local_majority(const GameState& state, NodeId agent,
                         std::optional<OpinionOverride> override_with = std::nullopt);

/// Offer the speaker makes: its opinion's offer amount when converting the
/// listener would turn the speaker's perceived majority into its own opinion,
/// zero otherwise.
Currency speaker_offer(const GameState& state, NodeId speaker, NodeId listener);

/// Listener's expected gain from adopting the speaker's opinion.
double delta_i(const GameState& state, NodeId speaker, NodeId listener, Currency offer);

/// Logistic acceptance; committed agents never accept.
double acceptance_probability(double delta, bool committed) noexcept;

}  // namespace influence
