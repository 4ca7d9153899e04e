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


#include "cvrpcut/sep_fci.h"

#include <algorithm>

#include "cvrpcut/common.h"
#include "cvrpcut/sep_rci.h"

namespace cvrpcut {

void validate(const Partition& partition) {
  if (partition.demands.size() != partition.members.size()) {
    throw ValidationError("partition demands do not match its members");
  }
  std::vector<int> seen;
  for (const auto& s : partition.members) {
    if (s.empty()) throw ValidationError("partition member is empty");
    seen.insert(seen.end(), s.begin(), s.end());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw ValidationError("partition members overlap");
  }
  std::vector<int> frame = partition.frame;
  std::sort(frame.begin(), frame.end());
  if (seen != frame) throw ValidationError("partition does not cover its frame");
}

int64_t fci_rhs(std::span<const int64_t> member_demands, int64_t capacity,
                int64_t r_value) {
  int64_t rhs = 2 * r_value;
  for (int64_t d : member_demands) rhs += rci_rhs(d, capacity);
  return rhs;
}

int64_t fci_rhs(const Partition& partition, int64_t capacity, int64_t r_value) {
  return fci_rhs(partition.demands, capacity, r_value);
}

FciEvaluation evaluate_fci(double frame_boundary,
                           std::span<const double> member_boundaries,
                           std::span<const int64_t> member_demands,
                           int64_t capacity, int64_t r_value) {
  if (member_boundaries.size() != member_demands.size()) {
    throw ValidationError("boundary and demand lists differ in length");
  }
  FciEvaluation e;
  e.rhs = fci_rhs(member_demands, capacity, r_value);
  e.lhs = frame_boundary;
  for (double b : member_boundaries) e.lhs += b;
  e.violation = static_cast<double>(e.rhs) - e.lhs;
  return e;
}

BinBound bin_bound(const BinPackingItems& items, OpCounter* counter,
                   int64_t node_limit) {
  BinBound b{l2_lower_bound(items, counter), BinBoundTag::kLowerBound};
  if (items.weights.size() > static_cast<size_t>(kBppExactMaxItems)) return b;
  if (ffd_upper_bound(items) == b.value) {
    b.tag = BinBoundTag::kExact;
    return b;
  }
  if (auto exact = bpp_exact(items, node_limit)) {
    b.value = *exact;
    b.tag = BinBoundTag::kExact;
  }
  return b;
}

std::vector<FciCandidate> graphchip_fci(const SupportGraph& graph,
                                        std::span<const int> subset,
                                        const CoarseningHistory& history,
                                        GraphChipFciStats* stats) {
  GraphChipFciStats local;
  std::vector<FciCandidate> found;
  const int n = graph.n;
  const int64_t cap = graph.capacity;
  const int64_t frame_r = ceil_div(graph.total_customer_demand(), cap);

  std::vector<char> in_subset(n, 0);
  for (int v : subset) in_subset[v] = 1;

  double frame_boundary = 0.0;
  for (const WeightedEdge& e : graph.edges) {
    if (e.u == 0) frame_boundary += e.x;
  }

  std::vector<int> label(n);
  for (int t = history.depth() - 1; t >= 1; --t) {
    ++local.levels_scanned;
    OpCounter ops;
    Partition part;
    for (int v = 1; v < n; ++v) part.frame.push_back(v);
    part.members = supernodes_within(history, t, subset);
    for (int v = 1; v < n; ++v) {
      if (!in_subset[v]) part.members.push_back({v});
    }
    std::sort(part.members.begin(), part.members.end());
    ++local.partitions_built;

    label.assign(n, -1);
    part.demands.assign(part.members.size(), 0);
    for (size_t k = 0; k < part.members.size(); ++k) {
      for (int v : part.members[k]) {
        label[v] = static_cast<int>(k);
        part.demands[k] += graph.demand[v];
      }
    }
    std::vector<double> boundary(part.members.size(), 0.0);
    for (const WeightedEdge& e : graph.edges) {
      if (label[e.u] == label[e.v]) continue;
      if (label[e.u] >= 0) boundary[label[e.u]] += e.x;
      if (label[e.v] >= 0) boundary[label[e.v]] += e.x;
    }
    ops.ops += static_cast<int64_t>(n + graph.edges.size());

    bool member_violated = false;
    for (size_t k = 0; k < part.members.size(); ++k) {
      if (static_cast<double>(rci_rhs(part.demands[k], cap)) - boundary[k] >
          tol::kSeparation) {
        member_violated = true;
        break;
      }
    }
    if (member_violated) {
      ++local.levels_skipped;
      continue;
    }

    const FciEvaluation screen =
        evaluate_fci(frame_boundary, boundary, part.demands, cap, frame_r);
    if (!(screen.violation > -2.0)) {
      ++local.screened_out;
      continue;
    }

    BinPackingItems items = to_items(part.demands, cap, &ops);
    const BinBound r = bin_bound(items, &ops);
    local.work.push_back({static_cast<int64_t>(items.weights.size()), ops.ops});
    const FciEvaluation full =
        evaluate_fci(frame_boundary, boundary, part.demands, cap, r.value);
    if (!(full.violation > tol::kSeparation)) continue;

    FciCandidate c;
    c.partition = std::move(part);
    c.items = std::move(items);
    c.r_value = r.value;
    c.r_tag = r.tag;
    c.rhs = full.rhs;
    c.lhs = full.lhs;
    c.violation = full.violation;
    c.screening_rhs = screen.rhs;
    c.level = t;
    found.push_back(std::move(c));
  }
  if (stats) *stats = std::move(local);
  return found;
}

double fci_check(const FractionalSolution& sol, const FciCandidate& candidate) {
  return static_cast<double>(candidate.rhs) - cut_lhs(sol, to_cut(candidate));
}

Cut to_cut(const FciCandidate& candidate) {
  Cut cut;
  cut.kind = CutKind::kFci;
  cut.frame = candidate.partition.frame;
  cut.members = candidate.partition.members;
  cut.rhs = candidate.rhs;
  cut.violation = candidate.violation;
  cut.source = CutSource::kGraphChipFci;
  cut.fci = FciDetail{candidate.items.weights, candidate.r_value,
                      candidate.r_tag};
  return cut;
}

}  // namespace cvrpcut
