#include "influence/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "influence/error.hpp"

namespace influence {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::configuration, field + ": " + what);
}

}  // namespace

void GameParams::validate() const {
  if (!(reward >= 0.0)) config_error("game.reward", "must be >= 0");
  if (!(default_change_cost >= 0.0)) config_error("game.change_cost", "must be >= 0");
  if (knowledge_radius < 1) config_error("game.r_k", "must be >= 1");
  if (influence_radius < 1) config_error("game.r_i", "must be >= 1");
  if (num_opinions < 2 || num_opinions > kMaxOpinions) {
    config_error("game.num_opinions", "must be in [2, " + std::to_string(kMaxOpinions) + "]");
  }
  if (offer_amount.size() != static_cast<std::size_t>(num_opinions)) {
    config_error("game.offer_amount", "needs one entry per opinion");
  }
  for (Currency amount : offer_amount) {
    if (!(amount >= 0.0) || !std::isfinite(amount)) config_error("game.offer_amount", "must be finite and >= 0");
  }
  if (!std::isfinite(initial_budget)) config_error("game.initial_budget", "must be finite");
  if (rounds < 1) config_error("game.rounds", "must be >= 1");
}

std::shared_ptr<const Topology> make_topology(Graph graph, int knowledge_radius, int influence_radius) {
  if (knowledge_radius < 1) config_error("game.r_k", "must be >= 1");
  if (influence_radius < 1) config_error("game.r_i", "must be >= 1");

  auto topo = std::make_shared<Topology>();
  if (graph.size() <= kDiameterCheckLimit) {
    const int d = diameter(graph);
    topo->diameter = d;
    if (knowledge_radius > d) config_error("game.r_k", "exceeds graph diameter " + std::to_string(d));
    if (influence_radius > d) config_error("game.r_i", "exceeds graph diameter " + std::to_string(d));
  }
  topo->knowledge = precompute_neighborhoods(graph, knowledge_radius);
  topo->influence = influence_radius == knowledge_radius ? topo->knowledge
                                                         : precompute_neighborhoods(graph, influence_radius);
  topo->graph = std::move(graph);
  return topo;
}

std::string_view to_string(Attribution a) noexcept {
  switch (a) {
    case Attribution::same_opinion: return "same-opinion";
    case Attribution::homophily: return "homophily";
    case Attribution::influence: return "influence";
    case Attribution::rejected: return "rejected";
  }
  return "unknown";
}

GameState::GameState(std::shared_ptr<const Topology> topology, GameParams params, std::vector<AgentState> agents)
    : topology_(std::move(topology)), params_(std::move(params)), agents_(std::move(agents)) {
  params_.validate();
  if (!topology_) throw Error(ErrorKind::configuration, "game state requires a topology");
  if (agents_.size() != topology_->graph.size()) {
    throw Error(ErrorKind::configuration, "agent count " + std::to_string(agents_.size()) +
                                              " does not match graph size " +
                                              std::to_string(topology_->graph.size()));
  }
  counts_.assign(static_cast<std::size_t>(params_.num_opinions), 0);
  for (const auto& a : agents_) {
    if (a.opinion >= params_.num_opinions) {
      throw Error(ErrorKind::configuration, "agent opinion " + std::to_string(a.opinion) + " out of range");
    }
    ++counts_[a.opinion];
  }
}

Currency GameState::budget_sum() const noexcept {
  return std::accumulate(agents_.begin(), agents_.end(), Currency{0},
                         [](Currency acc, const AgentState& a) { return acc + a.budget; });
}

bool GameState::counts_consistent() const {
  std::vector<std::size_t> recount(counts_.size(), 0);
  for (const auto& a : agents_) ++recount[a.opinion];
  return recount == counts_;
}

bool GameState::budgets_consistent(double tolerance) const {
  const Currency base = static_cast<Currency>(agents_.size()) * params_.initial_budget;
  const Currency expected = params_.debit_speaker ? base : base + minted_;
  return std::abs(budget_sum() - expected) <= tolerance * std::max<Currency>(1.0, std::abs(expected));
}

InteractionRecord GameState::step(Rng& rng) {
  const auto speaker = static_cast<NodeId>(rng.below(agents_.size()));
  const auto reach = topology_->influence.ball(speaker);
  const NodeId listener = reach[rng.below(reach.size())];

  InteractionRecord rec;
  rec.round = round_;
  rec.speaker = speaker;
  rec.listener = listener;
  rec.speaker_opinion = agents_[speaker].opinion;
  rec.listener_opinion_before = agents_[listener].opinion;
  rec.offer = speaker_offer(*this, speaker, listener);
  rec.delta_i = delta_i(*this, speaker, listener, rec.offer);
  rec.p_accept = acceptance_probability(rec.delta_i, agents_[listener].committed);
  rec.accepted = rng.uniform01() < rec.p_accept;

  if (rec.accepted) {
    auto& l = agents_[listener];
    if (l.opinion != rec.speaker_opinion) {
      --counts_[l.opinion];
      ++counts_[rec.speaker_opinion];
      l.opinion = rec.speaker_opinion;
    }
    l.budget += rec.offer;
    if (params_.debit_speaker) agents_[speaker].budget -= rec.offer;
    minted_ += rec.offer;
  }

  if (rec.speaker_opinion == rec.listener_opinion_before) {
    rec.attribution = Attribution::same_opinion;
  } else if (!rec.accepted) {
    rec.attribution = Attribution::rejected;
  } else {
    rec.attribution = rec.offer > 0.0 ? Attribution::influence : Attribution::homophily;
  }

  ++round_;
  return rec;
}

std::vector<Currency> GameState::settle_rewards() {
  const auto top = std::max_element(counts_.begin(), counts_.end());
  const bool tied = std::count(counts_.begin(), counts_.end(), *top) > 1;
  if (!tied) {
    const auto winner = static_cast<OpinionId>(top - counts_.begin());
    for (auto& a : agents_) {
      if (a.opinion == winner) a.budget += params_.reward;
    }
  }
  std::vector<Currency> budgets;
  budgets.reserve(agents_.size());
  for (const auto& a : agents_) budgets.push_back(a.budget);
  return budgets;
}

OpinionId local_majority(const GameState& state, NodeId agent, std::optional<OpinionOverride> override_with) {
  std::array<std::uint32_t, kMaxOpinions> tally{};
  const auto opinion_of = [&](NodeId v) {
    return override_with && override_with->node == v ? override_with->opinion : state.opinion(v);
  };

  const OpinionId own = opinion_of(agent);
  ++tally[own];
  for (NodeId v : state.topology().knowledge.ball(agent)) ++tally[opinion_of(v)];

  const auto k = static_cast<std::size_t>(state.params().num_opinions);
  const auto best = *std::max_element(tally.begin(), tally.begin() + k);
  if (tally[own] == best) return own;
  return static_cast<OpinionId>(std::find(tally.begin(), tally.begin() + k, best) - tally.begin());
}

Currency speaker_offer(const GameState& state, NodeId speaker, NodeId listener) {
  const OpinionId own = state.opinion(speaker);
  if (own == state.opinion(listener)) return 0.0;
  // A listener outside the knowledge ball cannot move the speaker's majority.
  if (!state.topology().knowledge.contains(speaker, listener)) return 0.0;

  const auto& p = state.params();
  const Currency budget = state.agent(speaker).budget;
  const OpinionId now = local_majority(state, speaker);
  const OpinionId then = local_majority(state, speaker, OpinionOverride{listener, own});
  const bool gains = forecast(own, then, budget, p.reward) > forecast(own, now, budget, p.reward);
  return gains ? p.offer_amount[own] : 0.0;
}

double delta_i(const GameState& state, NodeId speaker, NodeId listener, Currency offer) {
  const auto& p = state.params();
  const AgentState& l = state.agent(listener);
  const OpinionId proposed = state.opinion(speaker);

  // Adopting one's own opinion leaves every majority unchanged.
  if (proposed == l.opinion) return offer - l.change_cost;

  const OpinionId now = local_majority(state, listener);
  const OpinionId then = local_majority(state, listener, OpinionOverride{listener, proposed});
  const OpinionId baseline_opinion = p.baseline == BaselineVariant::as_written ? proposed : l.opinion;
  return forecast(proposed, then, l.budget, p.reward) - l.change_cost + offer -
         forecast(baseline_opinion, now, l.budget, p.reward);
}

double acceptance_probability(double delta, bool committed) noexcept {
  if (committed) return 0.0;
  return 1.0 / (1.0 + std::exp(-delta));
}

}  // namespace influence
