// Copyright 2026 The cvrpcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvrpcut/coarsen.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "cvrpcut/common.h"

namespace cvrpcut {

int64_t SupportGraph::total_customer_demand() const {
  int64_t s = 0;
  for (int i = 1; i < n; ++i) s += demand[i];
  return s;
}

SupportGraph build_support(const FractionalSolution& sol, const Instance& inst,
                           int m) {
  if (sol.n() != inst.n()) {
    throw ValidationError("solution dimension " + std::to_string(sol.n()) +
                          " does not match instance dimension " +
                          std::to_string(inst.n()));
  }
  const int k = fleet_bound(inst).k;
  if (m < 0 || m > k - 1) {
    throw ValidationError("m must lie in [0, K-1]");
  }
  SupportGraph g;
  g.n = inst.n();
  g.edges = sol.support(tol::kSupportEdge);
  g.capacity = inst.capacity();
  g.fleet = k;
  g.m = m;
  g.demand.resize(g.n);
  g.features.resize(g.n);
  const double h2 = static_cast<double>(m) / k;
  for (int i = 0; i < g.n; ++i) {
    g.demand[i] = inst.demand(i);
    g.features[i] = {static_cast<double>(inst.demand(i)) / inst.capacity(), h2};
  }
  return g;
}

// ---------------------------------------------------------------------------
// Oracles

std::vector<double> HeuristicOracle::evaluate(const SupportGraph& g) const {
  std::vector<double> p(g.n, 0.0);
  if (g.n <= 1) return p;
  const double h2 = g.n > 1 ? g.features[1][1] : 0.0;
  const int64_t m = std::lround(h2 * g.fleet);
  const int64_t target = m * g.capacity;

  std::vector<std::vector<std::pair<int, double>>> adj(g.n);
  std::vector<double> degree(g.n, 0.0);
  for (const WeightedEdge& e : g.edges) {
    adj[e.u].push_back({e.v, e.x});
    adj[e.v].push_back({e.u, e.x});
    degree[e.u] += e.x;
    degree[e.v] += e.x;
  }

  int seed = 1;
  for (int i = 2; i < g.n; ++i) {
    if (g.demand[i] > g.demand[seed]) seed = i;
  }
  std::vector<char> in(g.n, 0);
  std::vector<double> conn(g.n, 0.0);  // x-connection to the set
  auto absorb = [&](int v) {
    in[v] = 1;
    for (auto [w, x] : adj[v]) conn[w] += x;
  };
  absorb(seed);
  int64_t set_demand = g.demand[seed];
  int set_size = 1;
  while (set_demand <= target && set_size < g.n - 1) {
    int best = -1;
    for (int v = 1; v < g.n; ++v) {
      if (in[v]) continue;
      if (best < 0 || conn[v] > conn[best]) best = v;
    }
    absorb(best);
    set_demand += g.demand[best];
    ++set_size;
  }

  for (int v = 1; v < g.n; ++v) {
    const double r =
        degree[v] > 0.0 ? std::clamp(conn[v] / degree[v], 0.0, 1.0) : 0.0;
    const double base = in[v] ? params_.p_in : params_.p_out;
    p[v] = std::clamp(base + params_.blend * (2.0 * r - 1.0), 0.0, 1.0);
  }
  return p;
}

ConstantOracle::ConstantOracle(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("constant probability must lie in [0, 1]");
  }
}

std::vector<double> ConstantOracle::evaluate(const SupportGraph& graph) const {
  return std::vector<double>(graph.n, p_);
}

std::unique_ptr<ProbabilityOracle> heuristic_oracle(
    HeuristicOracleParams params) {
  return std::make_unique<HeuristicOracle>(params);
}

namespace {

struct Fnv1a {
  uint64_t h = 14695981039346656037ULL;
  void bytes(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
  void u64(uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
};

}  // namespace

std::string graph_signature(const SupportGraph& g) {
  Fnv1a f;
  f.u64(static_cast<uint64_t>(g.n));
  for (int i = 0; i < g.n; ++i) f.u64(static_cast<uint64_t>(g.demand[i]));
  std::vector<WeightedEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  f.u64(edges.size());
  for (const WeightedEdge& e : edges) {
    f.u64(static_cast<uint64_t>(e.u));
    f.u64(static_cast<uint64_t>(e.v));
    f.f64(e.x);
  }
  f.f64(g.n > 1 ? g.features[1][1] : 0.0);
  char buf[17];
  static const char* kHex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = kHex[(f.h >> (60 - 4 * i)) & 0xF];
  buf[16] = '\0';
  return buf;
}

std::vector<OracleEntry> read_oracle_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open oracle file: " + path);
  std::vector<OracleEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      OracleEntry e;
      e.signature = j.at("signature").get<std::string>();
      e.p = j.at("p").get<std::vector<double>>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

void write_oracle_entries(const std::string& path,
                          std::span<const OracleEntry> entries) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write oracle file: " + path);
  for (const OracleEntry& e : entries) {
    nlohmann::json j;
    j["signature"] = e.signature;
    j["p"] = e.p;
    out << j.dump() << '\n';
  }
}

FileOracle::FileOracle(const std::string& path, HeuristicOracleParams fallback)
    : FileOracle(read_oracle_entries(path), fallback) {}

FileOracle::FileOracle(std::span<const OracleEntry> entries,
                       HeuristicOracleParams fallback)
    : fallback_(fallback) {
  for (const OracleEntry& e : entries) table_[e.signature] = e.p;
}

std::vector<double> FileOracle::evaluate(const SupportGraph& g) const {
  auto it = table_.find(graph_signature(g));
  if (it != table_.end() && static_cast<int>(it->second.size()) == g.n) {
    return it->second;
  }
  fallbacks_.fetch_add(1);
  return fallback_.evaluate(g);
}

std::unique_ptr<ProbabilityOracle> file_oracle(const std::string& path) {
  return std::make_unique<FileOracle>(path);
}

// ---------------------------------------------------------------------------
// Edge selection

double contraction_prob(double p_i, double p_j, bool touches_depot) {
  if (touches_depot) return 0.0;
  return p_i * p_j + (1.0 - p_i) * (1.0 - p_j);
}

const char* to_string(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::kGreedy:
      return "greedy";
    case SelectionRule::kPiGreedy:
      return "pi-greedy";
    case SelectionRule::kRoulette:
      return "roulette";
    case SelectionRule::kSoftmax:
      return "softmax";
  }
  return "?";
}

SelectionRule parse_selection_rule(const std::string& name) {
  if (name == "greedy") return SelectionRule::kGreedy;
  if (name == "pi-greedy" || name == "pi_greedy") return SelectionRule::kPiGreedy;
  if (name == "roulette") return SelectionRule::kRoulette;
  if (name == "softmax") return SelectionRule::kSoftmax;
  throw ValidationError("unknown edge-selection policy: " + name);
}

void validate(const EdgePolicy& policy) {
  if (policy.rule == SelectionRule::kPiGreedy && !(policy.pi_max > 0.0)) {
    throw ValidationError("pi-greedy needs pi_max > 0");
  }
  if (policy.rule == SelectionRule::kSoftmax && !(policy.tau > 0.0)) {
    throw ValidationError("softmax needs tau > 0");
  }
}

namespace {

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::optional<size_t> select_edge(std::span<const ScoredEdge> edges,
                                  const EdgePolicy& policy,
                                  std::mt19937_64& rng) {
  std::optional<size_t> best;
  switch (policy.rule) {
    case SelectionRule::kGreedy: {
      for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].q <= 0.0) continue;
        if (!best || edges[k].q > edges[*best].q) best = k;
      }
      return best;
    }
    case SelectionRule::kPiGreedy: {
      double best_score = -kInfinity;
      for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].q <= 0.0) continue;
        const double score = edges[k].q + policy.pi_max * unit(rng);
        if (score > best_score) {
          best_score = score;
          best = k;
        }
      }
      return best;
    }
    case SelectionRule::kRoulette:
    case SelectionRule::kSoftmax: {
      double qmax = -kInfinity;
      for (const ScoredEdge& e : edges) {
        if (e.q > 0.0) qmax = std::max(qmax, e.q);
      }
      if (qmax == -kInfinity) return std::nullopt;
      std::vector<double> w(edges.size(), 0.0);
      double total = 0.0;
      for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].q <= 0.0) continue;
        w[k] = policy.rule == SelectionRule::kRoulette
                   ? edges[k].q
                   : std::exp((edges[k].q - qmax) / policy.tau);
        total += w[k];
      }
      const double r = unit(rng) * total;
      double acc = 0.0;
      for (size_t k = 0; k < edges.size(); ++k) {
        if (w[k] <= 0.0) continue;
        acc += w[k];
        best = k;
        if (r < acc) break;
      }
      return best;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Coarsening

namespace {

// Mutable working graph for one coarsening level. Vertex ids are the ids of
// the previous level; a merged supernode keeps the smaller id.
struct WorkGraph {
  std::vector<char> active;
  std::vector<int64_t> demand;
  std::vector<double> p;
  std::vector<std::vector<int>> members;
  std::vector<std::map<int, double>> adj;
  int alive = 0;

  explicit WorkGraph(const SupportGraph& g, std::span<const double> probs,
                     const std::vector<std::vector<int>>& level_members)
      : active(g.n, 1),
        demand(g.demand),
        p(probs.begin(), probs.end()),
        members(level_members),
        adj(g.n),
        alive(g.n) {
    for (const WeightedEdge& e : g.edges) {
      adj[e.u][e.v] += e.x;
      adj[e.v][e.u] += e.x;
    }
  }

  void scored_edges(std::vector<ScoredEdge>& out) const {
    out.clear();
    for (int u = 1; u < static_cast<int>(active.size()); ++u) {
      if (!active[u]) continue;
      for (auto it = adj[u].upper_bound(u); it != adj[u].end(); ++it) {
        out.push_back({u, it->first, contraction_prob(p[u], p[it->first], false)});
      }
    }
  }

  void contract(int u, int v) {
    if (v < u) std::swap(u, v);
    const int64_t du = demand[u], dv = demand[v];
    const int64_t dsum = du + dv;
    p[u] = dsum > 0 ? (p[u] * du + p[v] * dv) / dsum : 0.5 * (p[u] + p[v]);
    demand[u] = dsum;
    members[u].insert(members[u].end(), members[v].begin(), members[v].end());
    std::sort(members[u].begin(), members[u].end());
    for (auto [w, x] : adj[v]) {
      adj[w].erase(v);
      if (w == u) continue;
      adj[u][w] += x;
      adj[w][u] += x;
    }
    adj[v].clear();
    members[v].clear();
    active[v] = 0;
    --alive;
  }
};

}  // namespace

int coarsening_depth_bound(int n, double gamma) {
  if (n <= kCoarsestSize) return 1;
  return static_cast<int>(
             std::ceil(std::log(3.0 / n) / std::log(gamma) - 1e-12)) +
         1;
}

CoarseningResult coarsen(const SupportGraph& graph,
                         const ProbabilityOracle& oracle,
                         const EdgePolicy& policy, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ValidationError("coarsening ratio must lie in (0, 1)");
  }
  validate(policy);
  std::mt19937_64 rng(policy.seed);

  CoarseningResult res;
  res.history.original_n = graph.n;
  CoarseningLevel identity;
  identity.members.resize(graph.n);
  for (int i = 0; i < graph.n; ++i) identity.members[i] = {i};
  res.history.levels.push_back(std::move(identity));

  SupportGraph current = graph;
  std::vector<double> p = oracle.evaluate(current);
  ++res.oracle_calls;
  std::vector<ScoredEdge> scored;

  while (current.n > kCoarsestSize) {
    const int target =
        std::max(kCoarsestSize, static_cast<int>(std::floor(gamma * current.n)));
    WorkGraph work(current, p, res.history.levels.back().members);
    int merged = 0;
    while (work.alive > target) {
      work.scored_edges(scored);
      const auto pick = select_edge(scored, policy, rng);
      if (!pick) break;
      work.contract(scored[*pick].u, scored[*pick].v);
      ++merged;
    }
    if (merged == 0) break;
    res.contractions += merged;

    // Relabel the survivors 0..k-1 in id order (the depot stays 0).
    std::vector<int> relabel(current.n, -1);
    int k = 0;
    for (int u = 0; u < current.n; ++u) {
      if (work.active[u]) relabel[u] = k++;
    }
    SupportGraph next;
    next.n = k;
    next.capacity = current.capacity;
    next.fleet = current.fleet;
    next.m = current.m;
    next.demand.resize(k);
    next.features.resize(k);
    CoarseningLevel level;
    level.members.resize(k);
    level.probabilities = p;
    for (int u = 0; u < current.n; ++u) {
      if (!work.active[u]) continue;
      const int nu = relabel[u];
      next.demand[nu] = work.demand[u];
      next.features[nu] = {static_cast<double>(work.demand[u]) / current.capacity,
                           current.features[u][1]};
      level.members[nu] = std::move(work.members[u]);
      for (auto [w, x] : work.adj[u]) {
        if (w > u && x > 0.0) next.edges.push_back({nu, relabel[w], x});
      }
    }
    std::sort(next.edges.begin(), next.edges.end(),
              [](const auto& a, const auto& b) {
                return std::tie(a.u, a.v) < std::tie(b.u, b.v);
              });
    res.history.levels.push_back(std::move(level));
    current = std::move(next);
    p = oracle.evaluate(current);
    ++res.oracle_calls;
  }

  res.final_probabilities = std::move(p);
  res.coarsest = std::move(current);
  return res;
}

std::optional<std::vector<int>> assign_and_uncoarsen(
    std::span<const double> final_probabilities,
    const CoarseningHistory& history) {
  const CoarseningLevel& top = history.levels.back();
  if (final_probabilities.size() != top.members.size()) {
    throw ValidationError("probability vector does not match coarsest level");
  }
  std::vector<int> s;
  for (size_t u = 1; u < top.members.size(); ++u) {
    if (final_probabilities[u] >= 0.5) {
      s.insert(s.end(), top.members[u].begin(), top.members[u].end());
    }
  }
  if (s.empty()) return std::nullopt;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace cvrpcut
