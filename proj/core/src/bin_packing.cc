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


#include "cvrpcut/bin_packing.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "cvrpcut/common.h"

namespace cvrpcut {

BinPackingItems to_items(std::span<const int64_t> demands, int64_t capacity,
                         OpCounter* counter) {
  if (capacity <= 0) throw ValidationError("bin capacity must be positive");
  BinPackingItems items;
  items.capacity = capacity;
  for (int64_t d : demands) {
    if (d < 1) throw ValidationError("member demand must be positive");
    const int64_t full = d / capacity;
    for (int64_t k = 0; k < full; ++k) items.weights.push_back(capacity);
    if (d % capacity != 0) items.weights.push_back(d % capacity);
    if (counter) counter->ops += full + 1;
  }
  return items;
}

void validate(const BinPackingItems& items) {
  if (items.capacity <= 0) throw ValidationError("bin capacity must be positive");
  for (int64_t w : items.weights) {
    if (w < 1 || w > items.capacity) {
      throw ValidationError("item weight " + std::to_string(w) +
                            " outside [1, " + std::to_string(items.capacity) +
                            "]");
    }
  }
}

int64_t l2_lower_bound(const BinPackingItems& items, OpCounter* counter) {
  validate(items);
  const int64_t cap = items.capacity;
  std::vector<int64_t> w = items.weights;
  const size_t n = w.size();
  if (n == 0) return 0;
  int64_t compares = 0;
  std::sort(w.begin(), w.end(), [&](int64_t a, int64_t b) {
    ++compares;
    return a > b;
  });
  // prefix[i] = w[0] + ... + w[i-1], weights in decreasing order.
  std::vector<int64_t> prefix(n + 1, 0);
  for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];
  // Number of leading items satisfying pred (pred is monotone along w).
  auto count_while = [&](auto pred) {
    size_t lo = 0, hi = n;
    while (lo < hi) {
      ++compares;
      const size_t mid = (lo + hi) / 2;
      if (pred(w[mid])) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };
  const size_t n_half = count_while([&](int64_t x) { return 2 * x > cap; });
  int64_t best = 0;
  // L(k) only changes at item weights, so k ranges over 0 and the distinct
  // weights <= Q/2.
  std::vector<int64_t> ks{0};
  for (size_t i = n; i-- > n_half;) {
    ++compares;
    if (ks.back() != w[i]) ks.push_back(w[i]);
  }
  for (int64_t k : ks) {
    const size_t n1 = count_while([&](int64_t x) { return x > cap - k; });
    const size_t n3_end = count_while([&](int64_t x) { return x >= k; });
    const int64_t j2_count = static_cast<int64_t>(n_half - n1);
    const int64_t j2_sum = prefix[n_half] - prefix[n1];
    const int64_t j3_sum = prefix[n3_end] - prefix[n_half];
    const int64_t spare = j2_count * cap - j2_sum;
    const int64_t extra = j3_sum > spare ? ceil_div(j3_sum - spare, cap) : 0;
    best = std::max(best, static_cast<int64_t>(n1) + j2_count + extra);
  }
  if (counter) counter->ops += compares + static_cast<int64_t>(n);
  return best;
}

int64_t ffd_upper_bound(const BinPackingItems& items) {
  validate(items);
  std::vector<int64_t> w = items.weights;
  std::sort(w.begin(), w.end(), std::greater<>());
  std::vector<int64_t> residual;
  for (int64_t x : w) {
    auto it = std::find_if(residual.begin(), residual.end(),
                           [x](int64_t r) { return r >= x; });
    if (it == residual.end()) {
      residual.push_back(items.capacity - x);
    } else {
      *it -= x;
    }
  }
  return static_cast<int64_t>(residual.size());
}

namespace {

class BppSearch {
 public:
  BppSearch(std::vector<int64_t> w, int64_t cap, int64_t best,
            int64_t node_limit)
      : w_(std::move(w)), cap_(cap), best_(best), node_limit_(node_limit) {
    suffix_.assign(w_.size() + 1, 0);
    for (size_t i = w_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + w_[i];
  }

  // Returns false if the node budget ran out.
  bool run(int64_t lower) {
    lower_ = lower;
    return place(0);
  }
  int64_t best() const { return best_; }

 private:
  bool place(size_t i) {
    if (best_ == lower_) return true;
    if (++nodes_ > node_limit_) return false;
    const int64_t open = static_cast<int64_t>(residual_.size());
    if (i == w_.size()) {
      best_ = std::min(best_, open);
      return true;
    }
    int64_t free = 0;
    for (int64_t r : residual_) free += r;
    const int64_t overflow = suffix_[i] - free;
    const int64_t bound = open + (overflow > 0 ? ceil_div(overflow, cap_) : 0);
    if (bound >= best_) return true;

    const int64_t x = w_[i];
    // Bins with equal residual are interchangeable; try each value once.
    std::vector<int64_t> tried;
    for (size_t b = 0; b < residual_.size(); ++b) {
      if (residual_[b] < x) continue;
      if (std::find(tried.begin(), tried.end(), residual_[b]) != tried.end()) {
        continue;
      }
      tried.push_back(residual_[b]);
      residual_[b] -= x;
      const bool ok = place(i + 1);
      residual_[b] += x;
      if (!ok) return false;
      if (best_ == lower_) return true;
    }
    if (open + 1 < best_) {
      residual_.push_back(cap_ - x);
      const bool ok = place(i + 1);
      residual_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  std::vector<int64_t> w_;
  int64_t cap_;
  int64_t best_;
  int64_t node_limit_;
  int64_t lower_ = 0;
  int64_t nodes_ = 0;
  std::vector<int64_t> suffix_;
  std::vector<int64_t> residual_;
};

}  // namespace

std::optional<int64_t> bpp_exact(const BinPackingItems& items,
                                 int64_t node_limit) {
  validate(items);
  if (items.weights.size() > static_cast<size_t>(kBppExactMaxItems)) {
    throw ValidationError("exact bin packing is limited to " +
                          std::to_string(kBppExactMaxItems) + " items");
  }
  if (items.weights.empty()) return 0;
  const int64_t lower = l2_lower_bound(items);
  const int64_t upper = ffd_upper_bound(items);
  if (lower == upper) return upper;
  std::vector<int64_t> w = items.weights;
  std::sort(w.begin(), w.end(), std::greater<>());
  BppSearch search(std::move(w), items.capacity, upper,
                   node_limit > 0 ? node_limit : INT64_MAX);
  if (!search.run(lower)) return std::nullopt;
  return search.best();
}

}  // namespace cvrpcut
