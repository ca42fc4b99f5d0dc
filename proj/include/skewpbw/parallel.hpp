#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace skewpbw::detail {

inline constexpr std::uint64_t kChunk = 1024;

/// Least index i in [0, count) with pred(i), scanned by `jobs` workers.
/// The answer does not depend on `jobs`.
template <class Pred>
std::optional<std::uint64_t> parallel_find_first(std::uint64_t count, unsigned jobs, Pred&& pred) {
  if (jobs <= 1 || count <= kChunk) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{count};
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= count || start >= best.load()) return;
        const std::uint64_t stop = std::min(count, start + kChunk);
        for (std::uint64_t i = start; i < stop && i < best.load(); ++i) {
          if (pred(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == count) return std::nullopt;
  return best.load();
}

/// Minimum over i in [0, count) of fn(i) (an optional key), computed by
/// `jobs` workers; ties resolve to the same key regardless of `jobs`.
template <class Key, class Fn>
std::optional<Key> parallel_min(std::uint64_t count, unsigned jobs, Fn&& fn) {
  std::optional<Key> best;
  if (jobs <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) {
      auto k = fn(i);
      if (k && (!best || *k < *best)) best = std::move(k);
    }
    return best;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex mutex;
  std::exception_ptr error;
  auto worker = [&] {
    std::optional<Key> local;
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) break;
        auto k = fn(i);
        if (k && (!local || *k < *local)) local = std::move(k);
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!error) error = std::current_exception();
      next.store(count);
      return;
    }
    std::lock_guard lock(mutex);
    if (local && (!best || *local < *best)) best = std::move(local);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return best;
}

}  // namespace skewpbw::detail
