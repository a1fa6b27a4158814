#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gerbe {

/// Worker count: hardware concurrency capped by GERBEVERIFY_THREADS when set
/// to a positive integer.
int worker_count();

/// Calls body(k) for k in [0, count) across worker_count() threads. Work is
/// striped by index; the first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// out[k] = fn(k), evaluated in parallel; the output order never depends on
/// the schedule.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t k) { out[k] = fn(k); });
  return out;
}

}  // namespace gerbe
