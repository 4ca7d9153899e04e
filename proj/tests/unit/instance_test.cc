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

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cvrpcut/common.h"
#include "cvrpcut/instance.h"
#include "support/oracles.h"

namespace cvrpcut {
namespace {

constexpr char kTiny[] = R"(NAME : tiny
COMMENT : depot plus one customer
TYPE : CVRP
DIMENSION : 2
EDGE_WEIGHT_TYPE : EUC_2D
CAPACITY : 1
NODE_COORD_SECTION
1 0 0
2 3 4
DEMAND_SECTION
1 0
2 1
DEPOT_SECTION
1
-1
EOF
)";

std::string replace(std::string text, const std::string& from,
                    const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

TEST(ParseCvrplib, ThreeFourFiveTriangle) {
  const Instance inst = parse_cvrplib(kTiny);
  EXPECT_EQ(inst.name(), "tiny");
  EXPECT_EQ(inst.n(), 2);
  EXPECT_EQ(inst.capacity(), 1);
  EXPECT_EQ(inst.cost(0, 1), 5);
  EXPECT_EQ(inst.cost(1, 0), 5);
  EXPECT_EQ(inst.cost(1, 1), 0);
  EXPECT_EQ(fleet_bound(inst).k, 1);
}

TEST(ParseCvrplib, DepotIsReindexedToZero) {
  const std::string text = R"(NAME : moved
DIMENSION : 3
CAPACITY : 10
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 10 0
2 0 0
3 0 7
DEMAND_SECTION
1 4
2 0
3 5
DEPOT_SECTION
2
-1
)";
  const Instance inst = parse_cvrplib(text);
  EXPECT_EQ(inst.demand(0), 0);
  EXPECT_EQ(inst.coord(0), (Point{0, 0}));
  EXPECT_EQ(inst.total_demand(), 9);
  EXPECT_EQ(inst.cost(0, 1) + inst.cost(0, 2), 17);
}

TEST(ParseCvrplib, MissingSectionIsNamed) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"NODE_COORD_SECTION", "NODE_COORD_SECTION\n1 0 0\n2 3 4\n"},
      {"DEMAND_SECTION", "DEMAND_SECTION\n1 0\n2 1\n"},
      {"DEPOT_SECTION", "DEPOT_SECTION\n1\n-1\n"},
      {"CAPACITY", "CAPACITY : 1\n"},
      {"DIMENSION", "DIMENSION : 2\n"},
      {"EDGE_WEIGHT_TYPE", "EDGE_WEIGHT_TYPE : EUC_2D\n"},
      {"NAME", "NAME : tiny\n"},
  };
  for (const auto& [section, block] : cases) {
    const std::string text = replace(kTiny, block, "");
    try {
      parse_cvrplib(text);
      ADD_FAILURE() << "accepted input without " << section;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(section), std::string::npos)
          << e.what();
    }
  }
}

TEST(ParseCvrplib, UnknownKeywordIsRejected) {
  EXPECT_THROW(parse_cvrplib(replace(kTiny, "DEPOT_SECTION", "XYZZY")),
               ParseError);
}

TEST(ParseCvrplib, OtherWeightTypesAreUnsupported) {
  EXPECT_THROW(parse_cvrplib(replace(kTiny, "EUC_2D", "GEO")),
               UnsupportedFormatError);
}

TEST(ParseCvrplib, DemandAboveCapacityIsRejected) {
  EXPECT_THROW(parse_cvrplib(replace(kTiny, "2 1\nDEPOT", "2 2\nDEPOT")),
               ValidationError);
}

TEST(ParseCvrplib, GarbageIsAParseError) {
  EXPECT_THROW(parse_cvrplib("DIMENSION : banana\n"), ParseError);
  EXPECT_THROW(parse_cvrplib(""), ParseError);
}

TEST(InstanceCreate, ValidatesDemands) {
  EXPECT_THROW(Instance::create("a", {{0, 0}, {1, 1}}, {1, 1}, 5),
               ValidationError);
  EXPECT_THROW(Instance::create("a", {{0, 0}, {1, 1}}, {0, 0}, 5),
               ValidationError);
  EXPECT_THROW(Instance::create("a", {{0, 0}, {1, 1}}, {0, 1}, 0),
               ValidationError);
  EXPECT_THROW(Instance::create("a", {{0, 0}, {1, 1}}, {0}, 5),
               ValidationError);
}

TEST(FleetBound, PublishedAggregates) {
  // 3068 units of demand at capacity 144 need 22 vehicles.
  std::vector<int> d{0};
  for (int left = 3068; left > 0; left -= d.back()) {
    d.push_back(std::min(left, 144));
  }
  std::vector<Point> pts;
  for (size_t i = 0; i < d.size(); ++i) pts.push_back({1.0 * i, 0.0});
  const Instance inst = Instance::create("agg", pts, d, 144);
  EXPECT_EQ(inst.total_demand(), 3068);
  EXPECT_EQ(fleet_bound(inst).k, 22);
}

TEST(FleetBound, TotalEqualToCapacity) {
  const Instance inst =
      Instance::create("eq", {{0, 0}, {1, 0}, {2, 0}}, {0, 3, 4}, 7);
  EXPECT_EQ(fleet_bound(inst).k, 1);
}

TEST(FleetBound, MatchesBigIntegerCeiling) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_random(10 + static_cast<int>(seed), seed);
    const int k = fleet_bound(inst).k;
    EXPECT_EQ(k, oracle::big_ceil_div(inst.total_demand(), inst.capacity()));
    EXPECT_GE(int64_t{k} * inst.capacity(), inst.total_demand());
    EXPECT_LT(int64_t{k - 1} * inst.capacity(), inst.total_demand());
  }
}

TEST(GenerateRandom, Deterministic) {
  const Instance a = generate_random(50, 7);
  const Instance b = generate_random(50, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_cvrplib(a), serialize_cvrplib(b));
  EXPECT_NE(serialize_cvrplib(a), serialize_cvrplib(generate_random(50, 8)));
}

TEST(GenerateRandom, ProfileBounds) {
  const Instance inst = generate_random(50, 7);
  EXPECT_EQ(inst.num_customers(), 50);
  for (int i = 1; i < inst.n(); ++i) {
    EXPECT_GE(inst.demand(i), 1);
    EXPECT_LE(inst.demand(i), 100);
    EXPECT_LE(inst.demand(i), inst.capacity());
    EXPECT_GE(inst.coord(i).x, 0);
    EXPECT_LE(inst.coord(i).x, 1000);
    EXPECT_GE(inst.coord(i).y, 0);
    EXPECT_LE(inst.coord(i).y, 1000);
  }
}

TEST(GenerateRandom, RejectsTooFewCustomers) {
  EXPECT_THROW(generate_random(1, 0), ValidationError);
}

TEST(GenerateRandom, SerializeRoundTrip) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst =
        generate_random(2 + static_cast<int>(seed % 40), seed);
    EXPECT_EQ(parse_cvrplib(serialize_cvrplib(inst)), inst) << seed;
  }
}

TEST(GenerateRandom, FileRoundTrip) {
  const std::string dir = ::testing::TempDir();
  for (int k = 0; k < 20; ++k) {
    const Instance inst = generate_random(5 + k, 1000 + k);
    const std::string path = dir + "/rt" + std::to_string(k) + ".vrp";
    write_cvrplib_file(inst, path);
    const Instance back = read_cvrplib_file(path);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(parse_cvrplib(serialize_cvrplib(back)), back);
  }
}

TEST(Costs, SymmetricAndRounded) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Instance inst = oracle::random_small_instance(12, 9, rng);
    for (int i = 0; i < inst.n(); ++i) {
      EXPECT_EQ(inst.cost(i, i), 0);
      for (int j = 0; j < inst.n(); ++j) {
        EXPECT_EQ(inst.cost(i, j), inst.cost(j, i));
        const double dx = inst.coord(i).x - inst.coord(j).x;
        const double dy = inst.coord(i).y - inst.coord(j).y;
        EXPECT_LE(std::abs(inst.cost(i, j) - std::hypot(dx, dy)), 0.5);
      }
    }
  }
}

TEST(Costs, NearestIntegerRounding) {
  EXPECT_EQ(euc2d_distance({0, 0}, {1, 1}), 1);  // 1.414
  EXPECT_EQ(euc2d_distance({0, 0}, {1, 2}), 2);  // 2.236
  EXPECT_EQ(euc2d_distance({0, 0}, {2, 2}), 3);  // 2.828
  EXPECT_EQ(euc2d_distance({0, 0}, {0, 0.5}), 1);
}

}  // namespace
}  // namespace cvrpcut
