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

// CVRP instance model. Vertex 0 is always the depot; vertices 1..n-1 are
// customers. Edge costs are nearest-integer Euclidean distances (EUC_2D).

#ifndef CVRPCUT_INSTANCE_H_
#define CVRPCUT_INSTANCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvrpcut {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Number of vehicles needed to carry the total customer demand.
struct FleetBound {
  int k = 1;
};

class Instance {
 public:
  // Validates and builds an instance. `demands[0]` must be 0 (depot), every
  // customer demand must lie in [1, capacity]. Throws ValidationError.
  static Instance create(std::string name, std::vector<Point> coords,
                         std::vector<int> demands, int capacity);

  const std::string& name() const { return name_; }
  // Vertex count including the depot.
  int n() const { return static_cast<int>(coords_.size()); }
  int num_customers() const { return n() - 1; }
  int capacity() const { return capacity_; }
  int demand(int i) const { return demands_[i]; }
  std::span<const int> demands() const { return demands_; }
  const Point& coord(int i) const { return coords_[i]; }
  std::span<const Point> coords() const { return coords_; }
  int64_t total_demand() const { return total_demand_; }

  int64_t cost(int i, int j) const { return costs_[i * coords_.size() + j]; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.coords_ == b.coords_ &&
           a.demands_ == b.demands_ && a.capacity_ == b.capacity_;
  }

 private:
  Instance() = default;

  std::string name_;
  std::vector<Point> coords_;
  std::vector<int> demands_;
  int capacity_ = 0;
  int64_t total_demand_ = 0;
  std::vector<int64_t> costs_;
};

// K = ceil(total customer demand / Q).
FleetBound fleet_bound(const Instance& inst);

// Rounded Euclidean distance, TSPLIB EUC_2D convention.
int64_t euc2d_distance(const Point& a, const Point& b);

// Parses CVRPLIB text. Requires NAME, DIMENSION, CAPACITY,
// EDGE_WEIGHT_TYPE: EUC_2D, NODE_COORD_SECTION, DEMAND_SECTION and
// DEPOT_SECTION. The depot is re-indexed to vertex 0; the remaining vertices
// keep their file order.
Instance parse_cvrplib(std::string_view text);
Instance read_cvrplib_file(const std::string& path);

// Emits CVRPLIB text that parse_cvrplib reads back to an equal instance.
std::string serialize_cvrplib(const Instance& inst);
void write_cvrplib_file(const Instance& inst, const std::string& path);

struct GenerationProfile {
  int coord_max = 1000;
  int demand_min = 1;
  int demand_max = 100;
  // Expected number of customers per route; drives the capacity choice.
  double mean_route_size = 6.0;
};

// Integer coordinates uniform on [0, coord_max]^2 (depot included), integer
// demands uniform on [demand_min, demand_max], and
// Q = max(max demand, ceil(mean_route_size * total demand / n)).
// Pure function of (n, seed, profile). Throws ValidationError if n < 2.
Instance generate_random(int num_customers, uint64_t seed,
                         const GenerationProfile& profile = {});

}  // namespace cvrpcut

#endif  // CVRPCUT_INSTANCE_H_
