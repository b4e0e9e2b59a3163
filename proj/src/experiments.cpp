#include "influence/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "influence/error.hpp"
#include "influence/run.hpp"

namespace influence {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::configuration, field + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::set<std::string, std::less<>>& scalar_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "runs",
      "master_seed",
      "sample_every",
      "snapshot_every",
      "early_stop",
      "topology.kind",
      "topology.rows",
      "topology.cols",
      "topology.n",
      "topology.m",
      "game.I_W",
      "game.change_cost",
      "game.r_k",
      "game.r_i",
      "game.num_opinions",
      "game.offer_amount",
      "game.initial_budget",
      "game.rounds",
      "game.debit_speaker",
      "game.baseline",
      "scenario.kind",
      "scenario.fractions",
      "scenario.droplet_fraction",
      "scenario.droplet_minority",
      "scenario.droplet_majority",
      "scenario.committed",
  };
  return keys;
}

// Keys followed by ".<opinion>".
constexpr std::string_view kPerOpinionPrefixes[] = {"game.offer_amount.", "scenario.fractions."};

template <typename T>
T parse_integer(const std::string& field, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) fail(field, "expected an integer, got '" + std::string(text) + "'");
  return value;
}

double parse_real(const std::string& field, std::string_view text) {
  double value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) fail(field, "expected a number, got '" + std::string(text) + "'");
  return value;
}

bool parse_flag(const std::string& field, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  fail(field, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Reads values out of the key-value map, remembering which keys were used.
class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  std::optional<std::string_view> raw(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    return std::string_view(it->second);
  }

  template <typename T>
  T integer(const std::string& key, T fallback) const {
    const auto v = raw(key);
    return v ? parse_integer<T>(key, *v) : fallback;
  }
  double real(const std::string& key, double fallback) const {
    const auto v = raw(key);
    return v ? parse_real(key, *v) : fallback;
  }
  bool flag(const std::string& key, bool fallback) const {
    const auto v = raw(key);
    return v ? parse_flag(key, *v) : fallback;
  }
  std::string text(const std::string& key, std::string fallback) const {
    const auto v = raw(key);
    return v ? std::string(*v) : fallback;
  }

  // Entries "<prefix><id>" as (id, value) pairs.
  std::vector<std::pair<OpinionId, double>> per_opinion(std::string_view prefix) const {
    std::vector<std::pair<OpinionId, double>> out;
    for (auto it = kv_.lower_bound(std::string(prefix)); it != kv_.end() && it->first.starts_with(prefix); ++it) {
      out.emplace_back(parse_integer<int>(it->first, std::string_view(it->first).substr(prefix.size())),
                       parse_real(it->first, it->second));
    }
    return out;
  }

 private:
  const KeyValues& kv_;
};

OpinionId opinion_field(const std::string& field, std::string_view label, int num_opinions) {
  OpinionId id = 0;
  try {
    id = parse_opinion(label);
  } catch (const Error&) {
    fail(field, "unknown opinion '" + std::string(label) + "'");
  }
  if (id >= num_opinions) fail(field, "opinion '" + std::string(label) + "' out of range");
  return id;
}

std::string format_real(double v) { return fmt::format("{:.6f}", v); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace

OpinionId parse_opinion(std::string_view label) {
  label = trim(label);
  if (label.size() == 1 && label[0] >= 'A' && label[0] <= 'Z') return static_cast<OpinionId>(label[0] - 'A');
  int id = -1;
  const auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), id);
  if (label.empty() || ec != std::errc{} || ptr != label.data() + label.size() || id < 0 || id >= kMaxOpinions) {
    throw Error(ErrorKind::configuration, "invalid opinion label '" + std::string(label) + "'");
  }
  return static_cast<OpinionId>(id);
}

std::string canonical_key(std::string_view key) {
  key = trim(key);
  if (scalar_keys().contains(key)) return std::string(key);
  for (std::string_view prefix : kPerOpinionPrefixes) {
    if (key.starts_with(prefix)) {
      const auto label = key.substr(prefix.size());
      OpinionId id = 0;
      try {
        id = parse_opinion(label);
      } catch (const Error&) {
        throw Error(ErrorKind::configuration, "unknown key '" + std::string(key) + "'");
      }
      return std::string(prefix) + std::to_string(id);
    }
  }
  throw Error(ErrorKind::configuration, "unknown key '" + std::string(key) + "'");
}

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
  static const std::set<std::string, std::less<>> sections = {"topology", "game", "scenario"};
  KeyValues kv;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no) + ": "; };
    std::string_view body = line;
    if (const auto hash = body.find_first_of("#;"); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']') throw Error(ErrorKind::configuration, where() + "malformed section header");
      const auto name = trim(body.substr(1, body.size() - 2));
      if (!sections.contains(name)) {
        throw Error(ErrorKind::configuration, where() + "unknown section '" + std::string(name) + "'");
      }
      section = std::string(name);
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::configuration, where() + "expected key = value");
    const auto name = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (name.empty()) throw Error(ErrorKind::configuration, where() + "empty key");

    std::string key;
    try {
      key = canonical_key(section.empty() ? std::string(name) : section + "." + std::string(name));
    } catch (const Error& e) {
      throw Error(ErrorKind::configuration, where() + e.what());
    }
    if (!kv.emplace(key, std::string(value)).second) {
      throw Error(ErrorKind::configuration, where() + "duplicate key '" + key + "'");
    }
  }
  return kv;
}

void apply_override(KeyValues& kv, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorKind::configuration, "override '" + std::string(assignment) + "' is not key=value");
  }
  kv[canonical_key(assignment.substr(0, eq))] = std::string(trim(assignment.substr(eq + 1)));
}

ExperimentConfig config_from_key_values(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (canonical_key(key) != key) fail(key, "key is not in canonical form");
  }
  const Reader r(kv);
  ExperimentConfig cfg;
  cfg.source = kv;

  cfg.runs = r.integer("runs", cfg.runs);
  if (cfg.runs < 1) fail("runs", "must be >= 1");
  cfg.master_seed = r.integer<std::uint64_t>("master_seed", cfg.master_seed);
  cfg.sample_every = r.integer<std::int64_t>("sample_every", cfg.sample_every);
  if (cfg.sample_every < 0) fail("sample_every", "must be >= 0");
  if (r.raw("snapshot_every")) {
    cfg.snapshot_every = r.integer<std::int64_t>("snapshot_every", 0);
    if (*cfg.snapshot_every < 1) fail("snapshot_every", "must be >= 1");
  }
  cfg.early_stop = r.flag("early_stop", cfg.early_stop);

  auto& topo = cfg.topology;
  const auto kind = r.text("topology.kind", "lattice");
  if (kind == "lattice") {
    topo.kind = TopologyKind::lattice;
  } else if (kind == "barabasi-albert") {
    topo.kind = TopologyKind::barabasi_albert;
  } else {
    fail("topology.kind", "expected lattice or barabasi-albert, got '" + kind + "'");
  }
  topo.rows = r.integer("topology.rows", topo.rows);
  topo.cols = r.integer("topology.cols", topo.cols);
  topo.n = r.integer<std::size_t>("topology.n", topo.n);
  topo.m = r.integer("topology.m", topo.m);
  if (topo.kind == TopologyKind::lattice && (topo.rows < 3 || topo.cols < 3)) {
    fail("topology.rows", "lattice dimensions must be >= 3");
  }
  if (topo.kind == TopologyKind::barabasi_albert && (topo.m < 1 || topo.n <= static_cast<std::size_t>(topo.m))) {
    fail("topology.n", "Barabasi-Albert requires n > m >= 1");
  }

  auto& game = cfg.game;
  game.reward = r.real("game.I_W", game.reward);
  game.default_change_cost = r.real("game.change_cost", game.default_change_cost);
  game.knowledge_radius = r.integer("game.r_k", game.knowledge_radius);
  game.influence_radius = r.integer("game.r_i", game.influence_radius);
  game.num_opinions = r.integer("game.num_opinions", game.num_opinions);
  if (game.num_opinions < 2 || game.num_opinions > kMaxOpinions) {
    fail("game.num_opinions", "must be in [2, " + std::to_string(kMaxOpinions) + "]");
  }
  game.offer_amount.assign(static_cast<std::size_t>(game.num_opinions), r.real("game.offer_amount", 1.0));
  for (auto [id, amount] : r.per_opinion("game.offer_amount.")) {
    if (id >= game.num_opinions) fail("game.offer_amount." + std::to_string(id), "opinion out of range");
    game.offer_amount[id] = amount;
  }
  game.initial_budget = r.real("game.initial_budget", game.initial_budget);
  game.rounds = r.integer<std::int64_t>("game.rounds", game.rounds);
  game.debit_speaker = r.flag("game.debit_speaker", game.debit_speaker);
  const auto baseline = r.text("game.baseline", "listener-own-opinion");
  if (baseline == "as-written") {
    game.baseline = BaselineVariant::as_written;
  } else if (baseline == "listener-own-opinion") {
    game.baseline = BaselineVariant::listener_own_opinion;
  } else {
    fail("game.baseline", "expected as-written or listener-own-opinion, got '" + baseline + "'");
  }
  game.validate();

  if (topo.kind == TopologyKind::lattice) {
    // Torus diameter is floor(rows/2) + floor(cols/2).
    const int d = topo.rows / 2 + topo.cols / 2;
    if (game.knowledge_radius > d) fail("game.r_k", "exceeds lattice diameter " + std::to_string(d));
    if (game.influence_radius > d) fail("game.r_i", "exceeds lattice diameter " + std::to_string(d));
  }

  auto& sc = cfg.scenario;
  const auto sc_kind = r.text("scenario.kind", "random-uniform");
  if (sc_kind == "random-uniform") {
    sc.kind = ScenarioKind::random_uniform;
  } else if (sc_kind == "fractions") {
    sc.kind = ScenarioKind::fractions;
  } else if (sc_kind == "droplet") {
    sc.kind = ScenarioKind::droplet;
  } else if (sc_kind == "degree-preferential") {
    sc.kind = ScenarioKind::degree_preferential;
  } else {
    fail("scenario.kind", "expected random-uniform, fractions, droplet or degree-preferential, got '" + sc_kind + "'");
  }

  // Explicit entries come from the list and the per-opinion keys; the
  // remainder is split equally among opinions left unspecified.
  const auto k = static_cast<std::size_t>(game.num_opinions);
  std::vector<std::optional<double>> given(k);
  if (const auto list = r.raw("scenario.fractions")) {
    const auto parts = split_list(*list);
    if (parts.size() != k) fail("scenario.fractions", "needs " + std::to_string(k) + " entries");
    for (std::size_t i = 0; i < k; ++i) given[i] = parse_real("scenario.fractions", parts[i]);
  }
  for (auto [id, share] : r.per_opinion("scenario.fractions.")) {
    if (id >= game.num_opinions) fail("scenario.fractions." + std::to_string(id), "opinion out of range");
    given[id] = share;
  }
  double specified = 0.0;
  std::size_t open = 0;
  for (const auto& g : given) {
    if (g) {
      if (!(*g >= 0.0 && *g <= 1.0)) fail("scenario.fractions", "entries must be in [0, 1]");
      specified += *g;
    } else {
      ++open;
    }
  }
  if (open == 0 && std::abs(specified - 1.0) > 1e-9) fail("scenario.fractions", "must sum to 1");
  if (specified > 1.0 + 1e-9) fail("scenario.fractions", "entries exceed 1");
  sc.fractions.clear();
  for (const auto& g : given) {
    sc.fractions.push_back(g ? *g : std::max(0.0, 1.0 - specified) / static_cast<double>(open));
  }
  if (sc.kind == ScenarioKind::fractions) validate_fractions(sc.fractions);

  sc.droplet_fraction = r.real("scenario.droplet_fraction", sc.droplet_fraction);
  if (!(sc.droplet_fraction > 0.0 && sc.droplet_fraction < 1.0)) fail("scenario.droplet_fraction", "must be in (0, 1)");
  sc.droplet_minority = opinion_field("scenario.droplet_minority", r.text("scenario.droplet_minority", "A"), game.num_opinions);
  sc.droplet_majority = opinion_field("scenario.droplet_majority", r.text("scenario.droplet_majority", "B"), game.num_opinions);
  if (sc.droplet_minority == sc.droplet_majority) fail("scenario.droplet_majority", "must differ from droplet_minority");
  if (sc.kind == ScenarioKind::droplet && topo.kind != TopologyKind::lattice) {
    throw Error(ErrorKind::unsupported_topology, "scenario.kind: droplet requires a lattice topology");
  }
  if (sc.kind == ScenarioKind::degree_preferential && game.num_opinions != 2) {
    fail("scenario.kind", "degree-preferential assigns two opinions; set game.num_opinions = 2");
  }
  const auto committed = r.text("scenario.committed", "none");
  if (committed != "none") sc.committed = opinion_field("scenario.committed", committed, game.num_opinions);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  KeyValues kv = parse_key_values(text.str(), path.string());
  for (const auto& o : overrides) apply_override(kv, o);
  return config_from_key_values(kv);
}

std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master_seed, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = mix64(master_seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
  return seeds;
}

std::uint64_t derive_cell_seed(std::uint64_t master_seed, std::size_t value_index) {
  return mix64(master_seed ^ mix64(0xA5A5A5A5A5A5A5A5ULL + value_index));
}

Graph build_graph(const TopologySpec& spec, std::uint64_t run_seed) {
  if (spec.kind == TopologyKind::lattice) return make_lattice2d_pbc(spec.rows, spec.cols);
  Rng rng(stream_seed(run_seed, kGraphStream));
  return make_barabasi_albert(spec.n, spec.m, rng);
}

BatchResult run_batch(const ExperimentConfig& config, const BatchOptions& options) {
  const auto seeds = options.seeds ? *options.seeds : derive_run_seeds(config.master_seed, config.runs);
  const auto& game = config.game;
  game.validate();

  BatchResult batch;
  batch.num_opinions = game.num_opinions;
  batch.runs.resize(seeds.size());
  if (seeds.empty()) return batch;

  // Built up front so configuration errors surface before any run starts.
  const auto first_topology =
      make_topology(build_graph(config.topology, seeds[0]), game.knowledge_radius, game.influence_radius);
  const bool shared = config.topology.kind == TopologyKind::lattice;

  const auto execute = [&](std::size_t i) {
    const std::uint64_t seed = seeds[i];
    auto topo = (shared || i == 0) ? first_topology
                                   : make_topology(build_graph(config.topology, seed), game.knowledge_radius,
                                                   game.influence_radius);
    Rng init_rng(stream_seed(seed, kInitStream));
    const auto assignment = build_assignment(config.scenario, topo->graph, game.num_opinions, init_rng);

    RunOutput& out = batch.runs[i];
    RunOptions opts;
    opts.early_stop = config.early_stop;
    opts.sample_every = options.keep_samples ? config.sample_every : 0;
    opts.check_invariants = options.check_invariants;
    if (config.snapshot_every) {
      opts.snapshot_every = *config.snapshot_every;
      opts.on_snapshot = [&out](const GameState& s) {
        Snapshot snap{s.round(), {}};
        snap.opinions.reserve(s.size());
        for (const auto& a : s.agents()) snap.opinions.push_back(a.opinion);
        out.snapshots.push_back(std::move(snap));
      };
    }
    RunResult result = run(std::move(topo), game, apply_committed(assignment, config.scenario.committed, game), seed, opts);
    result.final_state.settle_rewards();
    out.summary = summarize(result, seed);
    out.samples = std::move(result.samples);
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(seeds.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        execute(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return batch;
}

SweepRow aggregate(std::string param, std::string value, std::span<const RunSummary> summaries) {
  SweepRow row;
  row.param = std::move(param);
  row.value = std::move(value);
  row.runs = static_cast<int>(summaries.size());
  if (summaries.empty()) return row;
  std::size_t not_absorbed = 0;
  std::size_t absorbed = 0;
  double p_a = 0.0;
  double t_sum = 0.0;
  for (const auto& s : summaries) {
    if (s.absorbed) {
      ++absorbed;
      t_sum += static_cast<double>(*s.t_absorb);
    } else {
      ++not_absorbed;
    }
    p_a += s.final_fractions.at(0);
  }
  row.frac_not_absorbed = static_cast<double>(not_absorbed) / static_cast<double>(summaries.size());
  row.mean_final_p_a = p_a / static_cast<double>(summaries.size());
  if (absorbed > 0) row.mean_t_absorb = t_sum / static_cast<double>(absorbed);
  return row;
}

std::vector<SweepRow> sweep(const ExperimentConfig& config, const SweepSpec& spec,
                            const std::function<void(const SweepRow&)>& progress, const BatchOptions& options) {
  const std::string param = canonical_key(spec.param);
  if (param == "scenario.fractions") fail(spec.param, "not a scalar field; sweep scenario.fractions.<opinion>");
  if (spec.values.empty()) fail(spec.param, "sweep needs at least one value");
  const int runs = spec.runs_per_value > 0 ? spec.runs_per_value : config.runs;

  // Validate every cell before running any of them.
  std::vector<ExperimentConfig> cells;
  cells.reserve(spec.values.size());
  for (const auto& value : spec.values) {
    KeyValues kv = config.source;
    kv[param] = value;
    cells.push_back(config_from_key_values(kv));
  }

  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    BatchOptions opts = options;
    opts.keep_samples = false;
    opts.seeds = derive_run_seeds(derive_cell_seed(config.master_seed, j), static_cast<std::size_t>(runs));
    const BatchResult batch = run_batch(cells[j], opts);
    std::vector<RunSummary> summaries;
    summaries.reserve(batch.runs.size());
    for (const auto& r : batch.runs) summaries.push_back(r.summary);
    rows.push_back(aggregate(spec.param, spec.values[j], summaries));
    if (progress) progress(rows.back());
  }
  return rows;
}

void write_summary_csv(const BatchResult& batch, std::ostream& out) {
  const auto k = static_cast<std::size_t>(batch.num_opinions);
  out << "run_id,seed,absorbed,winner,t_absorb";
  for (std::size_t i = 0; i < k; ++i) out << ",final_p_" << i;
  for (std::size_t i = 0; i < k; ++i) out << ",components_" << i;
  out << ",flips_homophily,flips_influence\n";
  for (std::size_t run = 0; run < batch.runs.size(); ++run) {
    const RunSummary& s = batch.runs[run].summary;
    out << run << ',' << s.seed << ',' << (s.absorbed ? 1 : 0) << ',';
    if (s.winner) out << static_cast<int>(*s.winner);
    out << ',';
    if (s.t_absorb) out << *s.t_absorb;
    for (double p : s.final_fractions) out << ',' << format_real(p);
    for (std::size_t c : s.final_components) out << ',' << c;
    out << ',' << s.flips.homophily << ',' << s.flips.influence << '\n';
  }
}

void write_timeseries_csv(const BatchResult& batch, std::ostream& out) {
  out << "run_id,t,opinion,fraction,components\n";
  for (std::size_t run = 0; run < batch.runs.size(); ++run) {
    for (const auto& sample : batch.runs[run].samples) {
      for (std::size_t k = 0; k < sample.fractions.size(); ++k) {
        out << run << ',' << sample.t << ',' << k << ',' << format_real(sample.fractions[k]) << ','
            << sample.components[k] << '\n';
      }
    }
  }
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "param,value,runs,frac_not_absorbed,mean_final_p_A,mean_t_absorb\n";
  for (const auto& row : rows) {
    out << row.param << ',' << row.value << ',' << row.runs << ',' << format_real(row.frac_not_absorbed) << ','
        << format_real(row.mean_final_p_a) << ',';
    if (row.mean_t_absorb) out << format_real(*row.mean_t_absorb);
    out << '\n';
  }
}

void write_summary_csv(const BatchResult& batch, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_summary_csv(batch, out);
  finish_output(out, path);
}

void write_timeseries_csv(const BatchResult& batch, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_timeseries_csv(batch, out);
  finish_output(out, path);
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_sweep_csv(rows, out);
  finish_output(out, path);
}

void write_snapshot(const Graph& graph, const Snapshot& snap, std::ostream& out) {
  if (const Lattice2d* shape = graph.lattice()) {
    out << "# t=" << snap.t << " rows=" << shape->rows << " cols=" << shape->cols << '\n';
    for (int r = 0; r < shape->rows; ++r) {
      for (int c = 0; c < shape->cols; ++c) {
        if (c > 0) out << ',';
        out << static_cast<int>(snap.opinions[static_cast<std::size_t>(r * shape->cols + c)]);
      }
      out << '\n';
    }
    return;
  }
  for (std::size_t v = 0; v < snap.opinions.size(); ++v) out << v << ',' << static_cast<int>(snap.opinions[v]) << '\n';
}

}  // namespace influence
