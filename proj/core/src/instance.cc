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

#include "cvrpcut/instance.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cvrpcut/common.h"

namespace cvrpcut {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::string_view what) {
  T value{};
  const auto* begin = tok.data();
  const auto* end = tok.data() + tok.size();
  if (!tok.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("invalid number '" + std::string(tok) + "' in " +
                     std::string(what));
  }
  return value;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

enum class Section { kNone, kCoords, kDemands, kDepot };

}  // namespace

int64_t euc2d_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<int64_t>(std::lround(std::sqrt(dx * dx + dy * dy)));
}

Instance Instance::create(std::string name, std::vector<Point> coords,
                          std::vector<int> demands, int capacity) {
  if (coords.size() < 2) {
    throw ValidationError("instance needs a depot and at least one customer");
  }
  if (coords.size() != demands.size()) {
    throw ValidationError("coordinate and demand counts differ");
  }
  if (capacity <= 0) throw ValidationError("capacity must be positive");
  if (demands[0] != 0) throw ValidationError("depot demand must be 0");
  Instance inst;
  for (size_t i = 1; i < demands.size(); ++i) {
    if (demands[i] < 1) {
      throw ValidationError("customer " + std::to_string(i) +
                            " has non-positive demand");
    }
    if (demands[i] > capacity) {
      throw ValidationError("customer " + std::to_string(i) + " demand " +
                            std::to_string(demands[i]) +
                            " exceeds capacity " + std::to_string(capacity));
    }
    inst.total_demand_ += demands[i];
  }
  inst.name_ = std::move(name);
  inst.coords_ = std::move(coords);
  inst.demands_ = std::move(demands);
  inst.capacity_ = capacity;
  const size_t n = inst.coords_.size();
  inst.costs_.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const int64_t c = euc2d_distance(inst.coords_[i], inst.coords_[j]);
      inst.costs_[i * n + j] = c;
      inst.costs_[j * n + i] = c;
    }
  }
  return inst;
}

FleetBound fleet_bound(const Instance& inst) {
  return FleetBound{static_cast<int>(
      std::max<int64_t>(1, ceil_div(inst.total_demand(), inst.capacity())))};
}

Instance parse_cvrplib(std::string_view text) {
  std::string name;
  std::optional<int> dimension;
  std::optional<int> capacity;
  std::optional<std::string> weight_type;
  bool saw_coords = false, saw_demands = false, saw_depot = false;
  std::vector<std::pair<int, Point>> coords;
  std::vector<std::pair<int, int>> demands;
  std::vector<int> depots;

  Section section = Section::kNone;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;
    if (line == "EOF") break;

    if (line == "NODE_COORD_SECTION") {
      section = Section::kCoords;
      saw_coords = true;
      continue;
    }
    if (line == "DEMAND_SECTION") {
      section = Section::kDemands;
      saw_demands = true;
      continue;
    }
    if (line == "DEPOT_SECTION") {
      section = Section::kDepot;
      saw_depot = true;
      continue;
    }

    const auto colon = line.find(':');
    const bool starts_alpha =
        std::isalpha(static_cast<unsigned char>(line.front())) != 0;
    if (starts_alpha && colon != std::string_view::npos) {
      section = Section::kNone;
      const std::string_view key = trim(line.substr(0, colon));
      const std::string_view value = trim(line.substr(colon + 1));
      if (key == "NAME") {
        name = std::string(value);
      } else if (key == "DIMENSION") {
        dimension = parse_number<int>(value, "DIMENSION");
      } else if (key == "CAPACITY") {
        capacity = parse_number<int>(value, "CAPACITY");
      } else if (key == "EDGE_WEIGHT_TYPE") {
        weight_type = std::string(value);
      } else if (key == "TYPE") {
        if (value != "CVRP") {
          throw UnsupportedFormatError("unsupported problem TYPE: " +
                                       std::string(value));
        }
      }
      // COMMENT and unknown header keys are ignored.
      continue;
    }
    if (starts_alpha) {
      throw UnsupportedFormatError("unsupported section: " +
                                   std::string(line));
    }

    const auto toks = split_ws(line);
    switch (section) {
      case Section::kCoords:
        if (toks.size() != 3) {
          throw ParseError("NODE_COORD_SECTION expects 'id x y'");
        }
        coords.push_back({parse_number<int>(toks[0], "NODE_COORD_SECTION"),
                          {parse_number<double>(toks[1], "NODE_COORD_SECTION"),
                           parse_number<double>(toks[2], "NODE_COORD_SECTION")}});
        break;
      case Section::kDemands:
        if (toks.size() != 2) {
          throw ParseError("DEMAND_SECTION expects 'id demand'");
        }
        demands.push_back({parse_number<int>(toks[0], "DEMAND_SECTION"),
                           parse_number<int>(toks[1], "DEMAND_SECTION")});
        break;
      case Section::kDepot:
        for (auto tok : toks) {
          const int id = parse_number<int>(tok, "DEPOT_SECTION");
          if (id == -1) {
            section = Section::kNone;
            break;
          }
          depots.push_back(id);
        }
        break;
      case Section::kNone:
        throw ParseError("unexpected data line: " + std::string(line));
    }
  }

  if (!dimension) throw ParseError("missing section: DIMENSION");
  if (!capacity) throw ParseError("missing section: CAPACITY");
  if (!weight_type) throw ParseError("missing section: EDGE_WEIGHT_TYPE");
  if (*weight_type != "EUC_2D") {
    throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE: " +
                                 *weight_type);
  }
  if (!saw_coords) throw ParseError("missing section: NODE_COORD_SECTION");
  if (!saw_demands) throw ParseError("missing section: DEMAND_SECTION");
  if (!saw_depot) throw ParseError("missing section: DEPOT_SECTION");
  if (name.empty()) throw ParseError("missing section: NAME");
  if (depots.size() != 1) {
    throw ValidationError("exactly one depot is supported");
  }
  const int n = *dimension;
  if (static_cast<int>(coords.size()) != n) {
    throw ParseError("NODE_COORD_SECTION has " + std::to_string(coords.size()) +
                     " entries, DIMENSION is " + std::to_string(n));
  }
  if (static_cast<int>(demands.size()) != n) {
    throw ParseError("DEMAND_SECTION has " + std::to_string(demands.size()) +
                     " entries, DIMENSION is " + std::to_string(n));
  }

  // Depot first, then every other vertex in file order.
  std::unordered_map<int, int> demand_of;
  for (auto [id, d] : demands) {
    if (!demand_of.emplace(id, d).second) {
      throw ParseError("duplicate DEMAND_SECTION id " + std::to_string(id));
    }
  }
  const int depot_id = depots.front();
  std::vector<Point> pts;
  std::vector<int> dem;
  pts.reserve(n);
  dem.reserve(n);
  auto push = [&](int id, const Point& p) {
    auto it = demand_of.find(id);
    if (it == demand_of.end()) {
      throw ParseError("no demand for node " + std::to_string(id));
    }
    pts.push_back(p);
    dem.push_back(it->second);
  };
  bool found_depot = false;
  for (const auto& [id, p] : coords) {
    if (id == depot_id) {
      push(id, p);
      found_depot = true;
      break;
    }
  }
  if (!found_depot) {
    throw ParseError("depot " + std::to_string(depot_id) +
                     " has no coordinates");
  }
  for (const auto& [id, p] : coords) {
    if (id != depot_id) push(id, p);
  }
  return Instance::create(std::move(name), std::move(pts), std::move(dem),
                          *capacity);
}

Instance read_cvrplib_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cvrplib(ss.str());
}

std::string serialize_cvrplib(const Instance& inst) {
  std::ostringstream out;
  out << "NAME : " << inst.name() << '\n';
  out << "TYPE : CVRP\n";
  out << "DIMENSION : " << inst.n() << '\n';
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "CAPACITY : " << inst.capacity() << '\n';
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < inst.n(); ++i) {
    out << i + 1 << ' ' << format_double(inst.coord(i).x) << ' '
        << format_double(inst.coord(i).y) << '\n';
  }
  out << "DEMAND_SECTION\n";
  for (int i = 0; i < inst.n(); ++i) {
    out << i + 1 << ' ' << inst.demand(i) << '\n';
  }
  out << "DEPOT_SECTION\n 1\n -1\nEOF\n";
  return out.str();
}

void write_cvrplib_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write instance file: " + path);
  out << serialize_cvrplib(inst);
}

Instance generate_random(int num_customers, uint64_t seed,
                         const GenerationProfile& profile) {
  if (num_customers < 2) {
    throw ValidationError("generate_random needs at least 2 customers");
  }
  if (profile.demand_min < 1 || profile.demand_max < profile.demand_min) {
    throw ValidationError("invalid demand range in generation profile");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, profile.coord_max);
  std::uniform_int_distribution<int> demand(profile.demand_min,
                                            profile.demand_max);
  const int n = num_customers + 1;
  std::vector<Point> pts(n);
  std::vector<int> dem(n, 0);
  for (int i = 0; i < n; ++i) {
    pts[i].x = coord(rng);
    pts[i].y = coord(rng);
  }
  int64_t total = 0;
  int max_demand = 0;
  for (int i = 1; i < n; ++i) {
    dem[i] = demand(rng);
    total += dem[i];
    max_demand = std::max(max_demand, dem[i]);
  }
  const int q = std::max<int>(
      max_demand, static_cast<int>(std::ceil(profile.mean_route_size *
                                             static_cast<double>(total) /
                                             num_customers)));
  std::string name =
      "rand-n" + std::to_string(num_customers) + "-s" + std::to_string(seed);
  return Instance::create(std::move(name), std::move(pts), std::move(dem), q);
}

}  // namespace cvrpcut
