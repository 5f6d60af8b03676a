#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace voa {

// Insert-once cache keyed by value. Readers share the lock; a racing second
// insert of the same key keeps the first value, which is identical anyway
// because every cached computation is a pure function of its key.
template <class Key, class Value>
class Memo {
public:
    std::optional<Value> find(const Key& k) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    const Value& insert(const Key& k, Value v) {
        std::unique_lock lock(mu_);
        return map_.try_emplace(k, std::move(v)).first->second;
    }

    template <class F>
    Value get_or_compute(const Key& k, F&& compute) const {
        if (auto hit = find(k)) return *hit;
        Value v = compute();
        std::unique_lock lock(mu_);
        return map_.try_emplace(k, std::move(v)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mu_;
    mutable std::map<Key, Value> map_;
};

}  // namespace voa
