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

// Support graphs, probability-guided graph coarsening with a recorded node-map
// history, and the edge-selection policies that drive the contractions.

#ifndef CVRPCUT_COARSEN_H_
#define CVRPCUT_COARSEN_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cvrpcut/instance.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

// Positive-value edge subgraph of an LP solution. Vertex 0 is the depot. The
// same type also describes coarsened graphs, where vertices are supernodes
// and `demand` is the summed demand of their members.
struct SupportGraph {
  int n = 0;
  std::vector<WeightedEdge> edges;  // u < v, sorted, x > 0
  std::vector<int64_t> demand;
  // h_i = (demand_i / Q, m / K)
  std::vector<std::array<double, 2>> features;
  int capacity = 1;
  int fleet = 1;  // K
  int m = 0;

  int64_t total_customer_demand() const;
};

SupportGraph build_support(const FractionalSolution& sol, const Instance& inst,
                           int m);

// Maps a graph to p_i in [0, 1] for every vertex; p[0] is ignored.
class ProbabilityOracle {
 public:
  virtual ~ProbabilityOracle() = default;
  virtual std::vector<double> evaluate(const SupportGraph& graph) const = 0;
};

struct HeuristicOracleParams {
  double p_in = 0.9;
  double p_out = 0.1;
  double blend = 0.05;
};

// Grows a set from the largest-demand customer, absorbing the outside
// customer with the largest x-connection to the set, until the set demand
// exceeds m*Q (m recovered as round(h^(2) * K)). Members get p_in, the rest
// p_out, each shifted by blend * (2r - 1) where r is the vertex's share of
// its x-degree going into the set.
class HeuristicOracle final : public ProbabilityOracle {
 public:
  explicit HeuristicOracle(HeuristicOracleParams params = {})
      : params_(params) {}
  std::vector<double> evaluate(const SupportGraph& graph) const override;

 private:
  HeuristicOracleParams params_;
};

// Every vertex gets the same probability.
class ConstantOracle final : public ProbabilityOracle {
 public:
  explicit ConstantOracle(double p);
  std::vector<double> evaluate(const SupportGraph& graph) const override;

 private:
  double p_;
};

std::unique_ptr<ProbabilityOracle> heuristic_oracle(
    HeuristicOracleParams params = {});

// 64-bit FNV-1a over the canonical graph content (vertex demands, sorted edge
// list with value bits, m feature bits), as 16 hex digits.
std::string graph_signature(const SupportGraph& graph);

struct OracleEntry {
  std::string signature;
  std::vector<double> p;
};

// JSON lines {"signature": hex, "p": [...]}.
std::vector<OracleEntry> read_oracle_entries(const std::string& path);
void write_oracle_entries(const std::string& path,
                          std::span<const OracleEntry> entries);

// Looks predictions up by graph signature; unknown graphs fall back to the
// heuristic oracle and are counted.
class FileOracle final : public ProbabilityOracle {
 public:
  explicit FileOracle(const std::string& path,
                      HeuristicOracleParams fallback = {});
  FileOracle(std::span<const OracleEntry> entries,
             HeuristicOracleParams fallback = {});
  std::vector<double> evaluate(const SupportGraph& graph) const override;
  int64_t fallback_count() const { return fallbacks_.load(); }
  size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, std::vector<double>> table_;
  HeuristicOracle fallback_;
  mutable std::atomic<int64_t> fallbacks_{0};
};

std::unique_ptr<ProbabilityOracle> file_oracle(const std::string& path);

// q_ij = p_i p_j + (1 - p_i)(1 - p_j); 0 for edges touching the depot.
double contraction_prob(double p_i, double p_j, bool touches_depot);

enum class SelectionRule { kGreedy, kPiGreedy, kRoulette, kSoftmax };

const char* to_string(SelectionRule rule);
// Accepts greedy, pi-greedy, roulette, softmax. Throws ValidationError.
SelectionRule parse_selection_rule(const std::string& name);

struct EdgePolicy {
  SelectionRule rule = SelectionRule::kGreedy;
  double pi_max = 0.001;
  double tau = 0.25;
  uint64_t seed = 0;
};

void validate(const EdgePolicy& policy);

struct ScoredEdge {
  int u = 0;
  int v = 0;
  double q = 0.0;
};

// Index of the chosen edge among those with q > 0, or nullopt if there are
// none. Greedy ties go to the earliest edge in the given order.
std::optional<size_t> select_edge(std::span<const ScoredEdge> edges,
                                  const EdgePolicy& policy,
                                  std::mt19937_64& rng);

struct CoarseningLevel {
  // members[u] = original vertices of supernode u; members[0] = {0}.
  std::vector<std::vector<int>> members;
  // Oracle output on the previous level that drove the contractions.
  std::vector<double> probabilities;
};

struct CoarseningHistory {
  int original_n = 0;
  // levels[0] is the identity map of the input graph; levels[t], t >= 1, is
  // the node map M_t.
  std::vector<CoarseningLevel> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }  // T
  int size(int t) const { return static_cast<int>(levels[t].members.size()); }
};

struct CoarseningResult {
  std::vector<double> final_probabilities;  // on the coarsest graph
  CoarseningHistory history;
  SupportGraph coarsest;
  int oracle_calls = 0;
  int contractions = 0;
};

// Depot plus three customer supernodes.
inline constexpr int kCoarsestSize = 4;

// Repeats { predict p; contract edges chosen by `policy` until the vertex
// count drops to max(kCoarsestSize, floor(gamma * |V|)) }, then predicts once
// more on the coarsest graph. Stops at kCoarsestSize vertices or when no edge
// has q > 0. Merged supernodes carry summed demand and the demand-weighted
// mean of their members' p; parallel edges are merged by summing x.
CoarseningResult coarsen(const SupportGraph& graph,
                         const ProbabilityOracle& oracle,
                         const EdgePolicy& policy, double gamma = 0.75);

// Level-count bound ceil(log(3/|V|)/log(gamma)) + 1.
int coarsening_depth_bound(int n, double gamma);

// Supernodes of the coarsest level with p >= 0.5, expanded to original
// customers (sorted). nullopt if nothing is selected.
std::optional<std::vector<int>> assign_and_uncoarsen(
    std::span<const double> final_probabilities,
    const CoarseningHistory& history);

}  // namespace cvrpcut

#endif  // CVRPCUT_COARSEN_H_
