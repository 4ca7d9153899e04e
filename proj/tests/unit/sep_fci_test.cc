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


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cvrpcut/analysis.h"
#include "cvrpcut/common.h"
#include "cvrpcut/sep_fci.h"
#include "cvrpcut/sep_rci.h"
#include "support/oracles.h"

namespace cvrpcut {
namespace {

Partition make_partition(std::vector<std::vector<int>> members,
                         const Instance& inst) {
  Partition p;
  p.members = std::move(members);
  for (const auto& s : p.members) {
    int64_t d = 0;
    for (int v : s) d += inst.demand(v);
    p.demands.push_back(d);
    p.frame.insert(p.frame.end(), s.begin(), s.end());
  }
  std::sort(p.frame.begin(), p.frame.end());
  return p;
}

Cut partition_cut(const Partition& p, int64_t rhs) {
  Cut cut;
  cut.kind = CutKind::kFci;
  cut.frame = p.frame;
  cut.members = p.members;
  cut.rhs = rhs;
  return cut;
}

// Random partition of a random non-empty subset of the customers.
Partition random_partition(const Instance& inst, std::mt19937_64& rng) {
  std::vector<int> customers(inst.num_customers());
  std::iota(customers.begin(), customers.end(), 1);
  std::shuffle(customers.begin(), customers.end(), rng);
  std::uniform_int_distribution<size_t> size(1, customers.size());
  customers.resize(size(rng));
  std::uniform_int_distribution<size_t> parts(1, customers.size());
  const size_t k = parts(rng);
  std::vector<std::vector<int>> members(k);
  for (size_t i = 0; i < customers.size(); ++i) {
    members[i < k ? i : rng() % k].push_back(customers[i]);
  }
  for (auto& s : members) std::sort(s.begin(), s.end());
  std::sort(members.begin(), members.end());
  return make_partition(members, inst);
}

TEST(Partition, Validate) {
  Partition p{{1, 2, 3}, {{1, 2}, {3}}, {4, 5}};
  EXPECT_NO_THROW(validate(p));
  Partition overlap{{1, 2, 3}, {{1, 2}, {2, 3}}, {4, 5}};
  EXPECT_THROW(validate(overlap), ValidationError);
  Partition gap{{1, 2, 3}, {{1, 2}}, {4}};
  EXPECT_THROW(validate(gap), ValidationError);
  Partition empty{{1}, {{1}, {}}, {4, 0}};
  EXPECT_THROW(validate(empty), ValidationError);
  Partition mismatch{{1, 2, 3}, {{1, 2}, {3}}, {4}};
  EXPECT_THROW(validate(mismatch), ValidationError);
}

TEST(FciRhs, PublishedExample) {
  const std::vector<int64_t> d{602, 662};
  EXPECT_EQ(fci_rhs(d, 144, 23), 66);
  const Partition p{{}, {{1}, {2}}, {602, 662}};
  EXPECT_EQ(fci_rhs(p, 144, 23), 66);
}

TEST(EvaluateFci, PublishedExample) {
  const std::vector<double> b{10.5, 11.19};
  const std::vector<int64_t> d{602, 662};
  const FciEvaluation e = evaluate_fci(44.0, b, d, 144, 23);
  EXPECT_EQ(e.rhs, 66);
  EXPECT_NEAR(e.lhs, 65.69, 1e-9);
  EXPECT_NEAR(e.violation, 0.31, 1e-9);
  const FciEvaluation lower = evaluate_fci(44.0, b, d, 144, 22);
  EXPECT_NEAR(lower.violation, e.violation - 2.0, 1e-9);
  EXPECT_THROW(evaluate_fci(44.0, b, std::vector<int64_t>{602}, 144, 23),
               ValidationError);
}

TEST(FciRhs, AllSingletons) {
  // With every member a single customer, rhs = 2 r + 2 |H|.
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int64_t> d(1, 50);
  for (int rep = 0; rep < 200; ++rep) {
    const int64_t cap = 50;
    std::vector<int64_t> demands(1 + rep % 12);
    for (auto& x : demands) x = d(rng);
    const int64_t r = 1 + rep % 5;
    EXPECT_EQ(fci_rhs(demands, cap, r),
              2 * r + 2 * static_cast<int64_t>(demands.size()));
  }
}

TEST(FciRhs, AlwaysEven) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int64_t> d(1, 5000), q(1, 400), r(0, 40);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<int64_t> demands(1 + rep % 9);
    for (auto& x : demands) x = d(rng);
    EXPECT_EQ(fci_rhs(demands, q(rng), r(rng)) % 2, 0);
  }
}

TEST(FciLhs, SingletonsReduceToRci) {
  // On a degree-feasible point each singleton member adds exactly 2 to both
  // sides, leaving x(delta(H)) >= 2 r.
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const Instance inst = oracle::random_small_instance(10, 20, rng);
    const FractionalSolution x = oracle::random_degree_feasible(inst, 3, rng);
    Partition p = random_partition(inst, rng);
    std::vector<std::vector<int>> singles;
    for (int v : p.frame) singles.push_back({v});
    p = make_partition(singles, inst);
    const int64_t r = bin_bound(to_items(p.demands, inst.capacity())).value;
    const int64_t rhs = fci_rhs(p, inst.capacity(), r);
    const double frame = boundary_value(x.support(), x.n(), p.frame);
    EXPECT_NEAR(rhs - cut_lhs(x, partition_cut(p, rhs)), 2.0 * r - frame,
                1e-9);
  }
}

TEST(BinBound, Tags) {
  // L2 and FFD agree.
  BinBound b = bin_bound(BinPackingItems{{6, 6, 8}, 10});
  EXPECT_EQ(b.value, 3);
  EXPECT_EQ(b.tag, BinBoundTag::kExact);
  // Too many items for the exact search: the L2 bound is reported as such.
  BinPackingItems many{std::vector<int64_t>(kBppExactMaxItems + 5, 3), 10};
  b = bin_bound(many);
  EXPECT_EQ(b.value, l2_lower_bound(many));
  EXPECT_EQ(b.tag, BinBoundTag::kLowerBound);
}

TEST(BinBound, ValueIsAValidLowerBound) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int64_t> w(1, 30);
  int resolved_by_search = 0;
  for (int rep = 0; rep < 400; ++rep) {
    BinPackingItems items{{}, 30};
    for (int i = 0; i < 1 + rep % 9; ++i) items.weights.push_back(w(rng));
    const BinBound b = bin_bound(items);
    const int64_t opt = oracle::bpp_by_partitions(items.weights, 30);
    EXPECT_EQ(b.tag, BinBoundTag::kExact);
    EXPECT_EQ(b.value, opt);
    resolved_by_search += l2_lower_bound(items) != ffd_upper_bound(items);
  }
  EXPECT_GT(resolved_by_search, 0);
}

TEST(FciValidity, HoldsForEveryIntegerSolution) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 25; ++rep) {
    const Instance inst = oracle::random_small_instance(6, 12, rng);
    std::vector<Cut> cuts;
    for (int k = 0; k < 8; ++k) {
      const Partition p = random_partition(inst, rng);
      ASSERT_NO_THROW(validate(p));
      const int64_t r = bin_bound(to_items(p.demands, inst.capacity())).value;
      cuts.push_back(partition_cut(p, fci_rhs(p, inst.capacity(), r)));
    }
    int64_t solutions = 0;
    oracle::for_each_cvrp_solution(inst, [&](const RouteSet& routes) {
      const FractionalSolution x = route_set_solution(inst, routes);
      for (const Cut& c : cuts) {
        EXPECT_GE(cut_lhs(x, c), c.rhs - 1e-9);
      }
      ++solutions;
      return true;
    });
    EXPECT_GT(solutions, 0);
  }
}

// Customers 1-3 each need more than half a vehicle, customer 4 rides with 3.
// The frame is tight for its rounded capacity bound but not for bin packing.
struct FciFixture {
  Instance inst;
  FractionalSolution x;
  SupportGraph graph;
  CoarseningHistory history;
  std::vector<int> subset{1, 2, 3, 4};
};

FciFixture fci_fixture() {
  FciFixture f{Instance::create("fci",
                                {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}},
                                {0, 6, 6, 6, 2}, 10),
                {}, {}, {}};
  const std::vector<WeightedEdge> edges{{0, 1, 0.5}, {0, 2, 0.5}, {0, 4, 1.0},
                                        {1, 2, 1.0}, {1, 3, 0.5}, {2, 3, 0.5},
                                        {3, 4, 1.0}};
  f.x = FractionalSolution::from_edges(5, edges);
  f.graph = build_support(f.x, f.inst, 0);
  f.history.original_n = 5;
  f.history.levels.resize(4);
  for (int v = 0; v < 5; ++v) f.history.levels[0].members.push_back({v});
  f.history.levels[1].members = {{0}, {1}, {2}, {3, 4}};
  f.history.levels[2].members = {{0}, {1, 2}, {3, 4}};
  f.history.levels[3].members = {{0}, {1, 2, 3, 4}};
  return f;
}

TEST(GraphChipFci, FixtureEmitsAtTheFinerLevel) {
  const FciFixture f = fci_fixture();
  for (int v = 1; v < 5; ++v) ASSERT_DOUBLE_EQ(f.x.degree(v), 2.0);
  GraphChipFciStats stats;
  const auto found = graphchip_fci(f.graph, f.subset, f.history, &stats);
  EXPECT_EQ(stats.levels_scanned, 2);
  // {1, 2} carries 12 units across a boundary of 2 at level 2.
  EXPECT_EQ(stats.levels_skipped, 1);
  EXPECT_EQ(stats.screened_out, 0);
  ASSERT_EQ(found.size(), 1u);
  const FciCandidate& c = found[0];
  EXPECT_EQ(c.level, 1);
  EXPECT_EQ(c.partition.frame, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(c.partition.members,
            (std::vector<std::vector<int>>{{1}, {2}, {3, 4}}));
  EXPECT_EQ(c.partition.demands, (std::vector<int64_t>{6, 6, 8}));
  EXPECT_EQ(c.r_value, 3);
  EXPECT_EQ(c.r_tag, BinBoundTag::kExact);
  EXPECT_EQ(c.screening_rhs, 10);
  EXPECT_EQ(c.rhs, 12);
  EXPECT_DOUBLE_EQ(c.lhs, 8.0);
  EXPECT_DOUBLE_EQ(c.violation, 4.0);
  EXPECT_NEAR(fci_check(f.x, c), 4.0, 1e-12);
  ASSERT_EQ(stats.work.size(), 1u);
  EXPECT_EQ(stats.work[0].items, 3);
}

TEST(GraphChipFci, FixtureCutIsValid) {
  const FciFixture f = fci_fixture();
  const auto found = graphchip_fci(f.graph, f.subset, f.history);
  ASSERT_EQ(found.size(), 1u);
  const Cut cut = to_cut(found[0]);
  oracle::for_each_cvrp_solution(f.inst, [&](const RouteSet& routes) {
    EXPECT_GE(cut_lhs(route_set_solution(f.inst, routes), cut), cut.rhs);
    return true;
  });
}

TEST(GraphChipFci, ToCut) {
  const FciFixture f = fci_fixture();
  const FciCandidate c = graphchip_fci(f.graph, f.subset, f.history).at(0);
  const Cut cut = to_cut(c);
  EXPECT_EQ(cut.kind, CutKind::kFci);
  EXPECT_EQ(cut.source, CutSource::kGraphChipFci);
  EXPECT_EQ(cut.frame, c.partition.frame);
  EXPECT_EQ(cut.members, c.partition.members);
  EXPECT_EQ(cut.rhs, c.rhs);
  ASSERT_TRUE(cut.fci.has_value());
  EXPECT_EQ(cut.fci->items, (std::vector<int64_t>{6, 6, 8}));
  EXPECT_EQ(cut.fci->r_value, 3);
  EXPECT_EQ(cut.fci->r_tag, BinBoundTag::kExact);
  EXPECT_DOUBLE_EQ(cut_lhs(f.x, cut), c.lhs);
}

TEST(GraphChipFci, ScreeningDropsHopelessLevels) {
  // Raising the depot flow makes the frame slack by far more than 2.
  FciFixture f = fci_fixture();
  std::vector<WeightedEdge> edges = f.x.support();
  for (auto& e : edges) {
    if (e.u == 0) e.x += 2.0;
  }
  f.graph = build_support(FractionalSolution::from_edges(5, edges), f.inst, 0);
  GraphChipFciStats stats;
  EXPECT_TRUE(graphchip_fci(f.graph, f.subset, f.history, &stats).empty());
  // The extra flow also lifts {1, 2} past its own bound.
  EXPECT_EQ(stats.levels_skipped, 0);
  EXPECT_EQ(stats.screened_out, 2);
}

TEST(GraphChipFci, RandomRunsRespectInvariants) {
  int emitted = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generate_random(20 + static_cast<int>(seed % 3) * 10,
                                          seed);
    // LP points after a few rounds of capacity cuts are where these show up.
    const FractionalSolution x = study_solution(inst, 2);
    const SupportGraph g = build_support(x, inst, 0);
    const CoarseningSeparation r =
        coarsening_separate(g, HeuristicOracle(), EdgePolicy{});
    std::vector<int> all(inst.num_customers());
    std::iota(all.begin(), all.end(), 1);
    GraphChipFciStats stats;
    const auto found = graphchip_fci(g, all, r.coarsening.history, &stats);
    // The coarsest level holds the selected set itself and is not scanned.
    EXPECT_EQ(stats.levels_scanned,
              std::max(0, r.coarsening.history.depth() - 1));
    EXPECT_EQ(stats.levels_scanned, stats.partitions_built);
    EXPECT_LE(static_cast<int>(found.size()) + stats.levels_skipped +
                  stats.screened_out,
              stats.levels_scanned);
    const int64_t frame_r = ceil_div(inst.total_demand(), inst.capacity());
    for (const FciCandidate& c : found) {
      ++emitted;
      EXPECT_NO_THROW(validate(c.partition));
      EXPECT_GT(c.violation, 0.0);
      EXPECT_GT(c.screening_rhs - c.lhs, -2.0);
      EXPECT_EQ(c.screening_rhs,
                fci_rhs(c.partition, inst.capacity(), frame_r));
      EXPECT_EQ(c.rhs, fci_rhs(c.partition, inst.capacity(), c.r_value));
      EXPECT_GE(c.r_value, frame_r);
      EXPECT_NEAR(fci_check(x, c), c.violation, 1e-9);
      // No member violates its own capacity inequality.
      for (size_t k = 0; k < c.partition.members.size(); ++k) {
        const double b = boundary_value(g.edges, g.n, c.partition.members[k]);
        EXPECT_GE(b, rci_rhs(c.partition.demands[k], inst.capacity()) - 1e-6);
      }
    }
  }
  EXPECT_GT(emitted, 0);
}

}  // namespace
}  // namespace cvrpcut
