#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace witt {

// One audit failure: the junction that failed and a rendering of the
// offending input.
struct Violation {
  std::string junction;
  std::string witness;
  bool operator==(const Violation&) const = default;
  auto operator<=>(const Violation&) const = default;
};

// Outcome of a randomized audit. Runs with equal parameters produce equal
// reports apart from elapsed_ms: violations are sorted and deduplicated and
// the counters are order independent, so sharding cannot change the result.
struct AuditReport {
  std::string suite;
  std::map<std::string, std::string> params;
  long samples = 0;
  long checks = 0;
  std::vector<Violation> violations;
  // Set when places of Q stand in for the geometric places of the intended
  // application; the identities checked are the same.
  bool analog_disclaimer = false;
  long elapsed_ms = 0;
};

// Worker count for audit sharding: WITTLAB_THREADS when set to a positive
// integer, else the hardware concurrency.
inline int worker_count() {
  if (const char* s = std::getenv("WITTLAB_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

// Runs fn(0), ..., fn(n-1) across worker_count() threads. Callers write into
// per-index output slots, so scheduling cannot reorder observable results.
// The first exception thrown by fn is rethrown after all workers join.
inline void shard_indices(long n, const std::function<void(long)>& fn) {
  if (n <= 0) return;
  long workers = std::min<long>(worker_count(), n);
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::exception_ptr> errs(static_cast<size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errs[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

inline void sort_violations(AuditReport& r) {
  std::sort(r.violations.begin(), r.violations.end());
  r.violations.erase(std::unique(r.violations.begin(), r.violations.end()), r.violations.end());
}

}  // namespace witt
