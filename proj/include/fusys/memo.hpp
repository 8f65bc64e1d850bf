#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace fusys {

struct IntVectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t seed = v.size();
    for (int x : v) seed ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

/// Thread-safe memo table keyed by integer vectors. Values are computed
/// outside the lock; concurrent misses on one key compute the same value and
/// the first insert wins.
template <class V>
class Memo {
 public:
  template <class F>
  V get_or_compute(const std::vector<int>& key, F&& compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    V value = compute();
    std::unique_lock lock(mutex_);
    return table_.emplace(key, std::move(value)).first->second;
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<int>, V, IntVectorHash> table_;
};

}  // namespace fusys
