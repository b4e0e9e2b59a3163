// Small fixtures shared by the unit tests.
#pragma once

#include <memory>
#include <vector>

#include "influence/engine.hpp"
#include "influence/graph.hpp"

namespace support {

using namespace influence;

inline std::vector<AgentState> agents_from(const std::vector<OpinionId>& opinions, const GameParams& params) {
  std::vector<AgentState> out;
  for (OpinionId o : opinions) out.push_back(AgentState{o, params.initial_budget, params.default_change_cost, false});
  return out;
}

inline GameParams binary_params(int radius = 1) {
  GameParams p;
  p.knowledge_radius = radius;
  p.influence_radius = radius;
  return p;
}

inline GameState lattice_state(int rows, int cols, const std::vector<OpinionId>& opinions,
                               const GameParams& params) {
  auto topo = make_topology(make_lattice2d_pbc(rows, cols), params.knowledge_radius, params.influence_radius);
  return GameState(topo, params, agents_from(opinions, params));
}

}  // namespace support
