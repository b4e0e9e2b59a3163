// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every statistical check uses the master seed below, fixed
// before any result was looked at.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "influence/engine.hpp"
#include "influence/experiments.hpp"
#include "influence/run.hpp"
#include "influence/scenarios.hpp"

using namespace influence;

namespace {

constexpr std::uint64_t kMasterSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

ExperimentConfig config_of(std::initializer_list<std::pair<const std::string, std::string>> entries) {
  KeyValues kv{{"master_seed", std::to_string(kMasterSeed)}, {"sample_every", "0"}};
  for (const auto& [k, v] : entries) kv[canonical_key(k)] = v;
  return config_from_key_values(kv);
}

BatchResult batch_of(const ExperimentConfig& c) { return run_batch(c, BatchOptions{.keep_samples = false}); }

double consensus_rate(const BatchResult& b) {
  const double absorbed = static_cast<double>(
      std::count_if(b.runs.begin(), b.runs.end(), [](const RunOutput& r) { return r.summary.absorbed; }));
  return absorbed / static_cast<double>(b.runs.size());
}

// Two-sample binomial noise on the difference of two rates over n runs each.
double two_sigma(double p, double q, int n) {
  const double pooled = (p + q) / 2;
  return 2 * std::sqrt(2 * pooled * (1 - pooled) / n);
}

bool nonincreasing_within_noise(const std::vector<double>& f, int n, std::string& detail) {
  bool ok = true;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] > f[i - 1] + two_sigma(f[i - 1], f[i], n)) {
      ok = false;
      detail += fmt::format(" rise at step {}", i);
    }
  }
  return ok;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt::format("{:.2f}", x);
  return s;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

// Majority of a 5-cell binary neighborhood, enumerated by hand.
int majority5(int self, const int nbr[4]) {
  int ones = self;
  for (int i = 0; i < 4; ++i) ones += nbr[i];
  return ones >= 3 ? 1 : 0;
}

Outcome unit_exactness() {
  bool ok = near(forecast(0, 0, 0.0, 10.0), 10.0) && near(forecast(0, 1, 3.0, 10.0), 3.0) &&
            near(forecast(0, 0, 2.5, 10.0), 12.5);
  ok = ok && near(acceptance_probability(0.0, false), 0.5) &&
       near(acceptance_probability(10.0, false), 1.0 / (1.0 + std::exp(-10.0))) &&
       acceptance_probability(5.0, true) == 0.0;

  GameParams p;
  p.baseline = BaselineVariant::as_written;
  const auto topo = make_topology(make_lattice2d_pbc(3, 3), 1, 1);
  const auto state = [&](std::vector<OpinionId> ops) {
    std::vector<AgentState> agents;
    for (OpinionId o : ops) agents.push_back(AgentState{o, 0.0, p.default_change_cost, false});
    return GameState(topo, p, agents);
  };
  // Center 4 holds B; neighbors 1 and 3 hold A.
  const double tipping = delta_i(state({1, 0, 1, 0, 1, 1, 1, 1, 1}), 1, 4, 1.0);
  const double settled = delta_i(state({0, 0, 0, 0, 1, 0, 0, 0, 0}), 1, 4, 0.0);
  p.default_change_cost = 0.0;
  const double same = delta_i(state({0, 0, 0, 0, 0, 0, 0, 0, 0}), 1, 4, 0.0);
  ok = ok && near(tipping, 10.0) && near(settled, -1.0) && near(same, 0.0);
  return {ok, fmt::format("tipping dI={} settled dI={} same dI={}", tipping, settled, same)};
}

Outcome neighborhood_oracle() {
  // All 512 binary 3x3 torus states cover every 5-cell pattern around every node.
  std::size_t checked = 0, mismatches = 0;
  for (auto variant : {BaselineVariant::as_written, BaselineVariant::listener_own_opinion}) {
    GameParams p;
    p.baseline = variant;
    const auto topo = make_topology(make_lattice2d_pbc(3, 3), 1, 1);
    for (int mask = 0; mask < 512; ++mask) {
      std::vector<AgentState> agents;
      std::vector<int> op(9);
      for (int v = 0; v < 9; ++v) {
        op[static_cast<std::size_t>(v)] = (mask >> v) & 1;
        agents.push_back(AgentState{static_cast<OpinionId>(op[static_cast<std::size_t>(v)]), 0.0, 1.0, false});
      }
      const GameState s(topo, p, agents);
      const auto nbrs = [](int v, int out[4]) {
        const int r = v / 3, c = v % 3;
        out[0] = ((r + 2) % 3) * 3 + c;
        out[1] = r * 3 + (c + 2) % 3;
        out[2] = r * 3 + (c + 1) % 3;
        out[3] = ((r + 1) % 3) * 3 + c;
      };
      const auto maj = [&](const std::vector<int>& o, int v) {
        int n[4], cells[4];
        nbrs(v, n);
        for (int i = 0; i < 4; ++i) cells[i] = o[static_cast<std::size_t>(n[i])];
        return majority5(o[static_cast<std::size_t>(v)], cells);
      };
      for (int sp = 0; sp < 9; ++sp) {
        int n[4];
        nbrs(sp, n);
        for (int l : n) {
          const int os = op[static_cast<std::size_t>(sp)], ol = op[static_cast<std::size_t>(l)];
          auto flipped = op;
          flipped[static_cast<std::size_t>(l)] = os;
          const double offer = (os != ol && maj(op, sp) != os && maj(flipped, sp) == os) ? 1.0 : 0.0;
          const int base = variant == BaselineVariant::as_written ? os : ol;
          const double expected =
              (maj(flipped, l) == os ? 10.0 : 0.0) - 1.0 + offer - (maj(op, l) == base ? 10.0 : 0.0);
          const auto su = static_cast<NodeId>(sp), lu = static_cast<NodeId>(l);
          if (speaker_offer(s, su, lu) != offer || delta_i(s, su, lu, offer) != expected) ++mismatches;
          ++checked;
        }
      }
    }
  }
  return {mismatches == 0, fmt::format("{} (speaker, listener, configuration) cases, {} mismatches", checked, mismatches)};
}

Outcome echo_chambers() {
  const auto b = batch_of(config_of({{"runs", "100"}, {"scenario.kind", "fractions"}, {"scenario.fractions", "0.5,0.5"}}));
  double total = 0.0;
  for (const auto& r : b.runs) {
    double sum = 0.0;
    int surviving = 0;
    for (std::size_t k = 0; k < r.summary.final_components.size(); ++k) {
      if (r.summary.final_components[k] > 0) {
        sum += static_cast<double>(r.summary.final_components[k]);
        ++surviving;
      }
    }
    total += sum / surviving;
  }
  const double mean_components = total / static_cast<double>(b.runs.size());
  const double consensus = consensus_rate(b);
  return {mean_components <= 3.0 && consensus <= 0.05,
          fmt::format("mean components per surviving opinion {:.2f} (<= 3), consensus {:.2f} (<= 0.05)",
                      mean_components, consensus)};
}

// Minimum minority fraction over the run, tracked from the full trajectory.
double min_minority_fraction(const ExperimentConfig& c, std::uint64_t seed) {
  const Graph g = build_graph(c.topology, seed);
  auto topo = make_topology(g, c.game.knowledge_radius, c.game.influence_radius);
  const auto assignment = init_droplet(topo->graph, 0, 1, c.scenario.droplet_fraction);
  const auto r = run(topo, c.game, apply_committed(assignment, std::nullopt, c.game), seed,
                     RunOptions{.record_trajectory = true});
  auto count = static_cast<double>(std::count(assignment.begin(), assignment.end(), 0));
  double lowest = count;
  for (const auto& rec : r.trajectory) {
    if (!rec.accepted || rec.speaker_opinion == rec.listener_opinion_before) continue;
    if (rec.listener_opinion_before == 0) --count;
    if (rec.speaker_opinion == 0) ++count;
    lowest = std::min(lowest, count);
  }
  return lowest / static_cast<double>(g.size());
}

Outcome droplet_resilience() {
  const auto small = batch_of(config_of({{"runs", "100"}, {"scenario.kind", "droplet"}, {"game.rounds", "1000"}}));
  const double survive = static_cast<double>(std::count_if(small.runs.begin(), small.runs.end(), [](const RunOutput& r) {
                           return r.summary.final_fractions[0] > 0.0;
                         })) / 100.0;

  const auto wide = config_of({{"runs", "100"}, {"scenario.kind", "droplet"}, {"game.rounds", "10000"}, {"game.r_k", "4"}});
  int dissolved = 0;
  for (std::uint64_t seed : derive_run_seeds(wide.master_seed, 100)) dissolved += min_minority_fraction(wide, seed) < 0.02;
  const double dissolve = dissolved / 100.0;
  return {survive >= 0.90 && dissolve >= 0.80,
          fmt::format("r_k=1 survival {:.2f} (>= 0.90), r_k=4 below 0.02 by t=1e4 in {:.2f} (>= 0.80)", survive,
                      dissolve)};
}

std::vector<double> non_absorbed(const ExperimentConfig& c, const std::string& param,
                                 const std::vector<std::string>& values) {
  std::vector<double> out;
  for (const auto& row : sweep(c, SweepSpec{param, values, 0})) out.push_back(row.frac_not_absorbed);
  return out;
}

Outcome radius_sweep() {
  const auto f = non_absorbed(config_of({{"runs", "50"}, {"game.rounds", "10000"}}), "game.r_k", {"1", "2", "3", "4", "5"});
  std::string detail;
  const bool monotone = nonincreasing_within_noise(f, 50, detail);
  return {monotone && f[0] >= 0.9, fmt::format("non-absorbed by r_k=1..5: {} (nonincreasing, r_k=1 >= 0.90){}", join(f), detail)};
}

Outcome resource_disparity() {
  std::vector<std::string> values;
  for (int i = 1; i <= 15; ++i) values.push_back(std::to_string(i));
  const auto f = non_absorbed(config_of({{"runs", "100"}}), "game.offer_amount.A", values);
  std::string detail;
  const bool monotone = nonincreasing_within_noise(f, 100, detail);
  const bool drops = f.front() - f.back() > two_sigma(f.front(), f.back(), 100);
  const double tail = std::accumulate(f.begin() + 10, f.end(), 0.0) / 5.0;
  const bool flat = std::abs(tail - f[10]) <= 0.1;
  return {f[0] >= 0.95 && monotone && drops && flat,
          fmt::format("non-consensus by I_A=1..15: {} (I_A=1 >= 0.95, decreasing, |mean(11..15) - f(11)| = {:.2f} <= 0.1){}",
                      join(f), std::abs(tail - f[10]), detail)};
}

Outcome topological_disparity() {
  const std::vector<std::string> fractions = {"0.30", "0.35", "0.40", "0.45", "0.50", "0.55"};
  const auto base = config_of({{"runs", "50"},
                               {"topology.kind", "barabasi-albert"},
                               {"topology.n", "1000"},
                               {"topology.m", "4"},
                               {"scenario.kind", "degree-preferential"}});
  std::vector<double> p;
  for (const auto& row : sweep(base, SweepSpec{"scenario.fractions.A", fractions, 0})) p.push_back(row.mean_final_p_a);

  std::optional<double> crossing;
  for (std::size_t i = 1; i < p.size() && !crossing; ++i) {
    if (p[i - 1] < 0.5 && p[i] >= 0.5) {
      const double x0 = std::stod(fractions[i - 1]), x1 = std::stod(fractions[i]);
      crossing = x0 + (0.5 - p[i - 1]) / (p[i] - p[i - 1]) * (x1 - x0);
    }
  }
  if (!crossing && !p.empty() && p.front() >= 0.5) crossing = std::stod(fractions.front());

  auto random_cfg = base.source;
  random_cfg["scenario.kind"] = "fractions";
  random_cfg["scenario.fractions.0"] = "0.45";
  const auto random_batch = batch_of(config_from_key_values(random_cfg));
  double random_p = 0.0;
  for (const auto& r : random_batch.runs) random_p += r.summary.final_fractions[0];
  random_p /= static_cast<double>(random_batch.runs.size());

  const bool cross_ok = crossing && *crossing >= 0.35 && *crossing <= 0.50;
  const bool random_ok = random_p <= 0.3 || random_p >= 0.7;
  return {cross_ok && random_ok,
          fmt::format("preferential mean final p_A by p_A(0)=0.30..0.55: {}; crossing {} (in [0.35, 0.50]); random 0.45 -> {:.2f} "
                      "(outside (0.3, 0.7))",
                      join(p), crossing ? fmt::format("{:.3f}", *crossing) : std::string("none"), random_p)};
}

Outcome committed_tipping() {
  const auto committed = batch_of(config_of({{"runs", "50"},
                                             {"game.num_opinions", "5"},
                                             {"scenario.kind", "fractions"},
                                             {"scenario.fractions.A", "0.15"},
                                             {"scenario.committed", "A"}}));
  const auto free = batch_of(config_of({{"runs", "50"},
                                        {"game.num_opinions", "5"},
                                        {"scenario.kind", "fractions"},
                                        {"scenario.fractions.A", "0.30"}}));
  const double with = consensus_rate(committed), without = consensus_rate(free);
  double mean_a = 0.0;
  for (const auto& r : committed.runs) mean_a += r.summary.final_fractions[0];
  mean_a /= static_cast<double>(committed.runs.size());
  return {with >= 0.4 && without <= 0.25,
          fmt::format("committed 0.15 consensus {:.2f} (>= 0.40, mean final p_A {:.2f}); uncommitted 0.30 consensus {:.2f} (<= 0.25)",
                      with, mean_a, without)};
}

Outcome multi_opinion_stasis() {
  const auto b = batch_of(config_of({{"runs", "50"}, {"game.num_opinions", "5"}, {"game.rounds", "5000"}}));
  int fewer = 0;
  for (const auto& r : b.runs) {
    const auto alive = std::count_if(r.summary.final_fractions.begin(), r.summary.final_fractions.end(),
                                     [](double f) { return f > 0.0; });
    fewer += alive < 5;
  }
  const double consensus = consensus_rate(b);
  const double shrink = fewer / static_cast<double>(b.runs.size());
  return {consensus <= 0.10 && shrink >= 0.80,
          fmt::format("consensus {:.2f} (<= 0.10), runs losing an opinion {:.2f} (>= 0.80)", consensus, shrink)};
}

Outcome determinism_and_accounting() {
  const auto c = config_of({{"runs", "8"},
                            {"sample_every", "100"},
                            {"topology.rows", "15"},
                            {"topology.cols", "15"},
                            {"game.rounds", "5000"},
                            {"game.offer_amount.A", "3"}});
  const auto csv = [&](unsigned threads, bool check) {
    const auto b = run_batch(c, BatchOptions{.threads = threads, .check_invariants = check});
    std::ostringstream s;
    write_summary_csv(b, s);
    write_timeseries_csv(b, s);
    return s.str();
  };
  const std::string first = csv(1, false);
  const bool identical = first == csv(1, false) && first == csv(4, false);

  bool accounting = true;
  try {
    csv(1, true);
    auto debit = c.source;
    debit["game.debit_speaker"] = "true";
    run_batch(config_from_key_values(debit), BatchOptions{.check_invariants = true});
  } catch (const std::exception&) {
    accounting = false;
  }
  return {identical && accounting,
          fmt::format("reruns byte-identical: {}, budget and count invariants every step: {}", identical, accounting)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"unit exactness", unit_exactness},
      {"neighborhood oracle", neighborhood_oracle},
      {"echo chambers", echo_chambers},
      {"droplet resilience", droplet_resilience},
      {"radius-of-knowledge sweep", radius_sweep},
      {"resource disparity", resource_disparity},
      {"topological disparity", topological_disparity},
      {"committed-agent tipping", committed_tipping},
      {"multi-opinion stasis", multi_opinion_stasis},
      {"determinism and accounting", determinism_and_accounting},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
