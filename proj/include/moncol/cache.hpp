#pragma once

#include <map>
#include <mutex>

#include "moncol/base.hpp"

namespace moncol {

/// Memo table keyed by object, safe for concurrent readers and writers.
template <class V>
class ObjectCache {
 public:
  template <class F>
  V get(const Object& key, F&& make) const {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = make();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<Object, V> map_;
};

}  // namespace moncol
