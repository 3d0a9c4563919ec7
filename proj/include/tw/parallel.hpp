#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

namespace tw {

/// 0 means one worker per hardware thread.
unsigned resolve_jobs(unsigned jobs);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is handed out
/// by an atomic counter; the first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

/// out[i] = fn(i), independent of the number of workers.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, Fn&& fn) {
  std::vector<std::optional<R>> slots(n);
  parallel_for(n, jobs, [&](std::size_t i) { slots[i].emplace(fn(i)); });
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace tw
