#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "cfdim/dimension.hpp"
#include "cfdim/report.hpp"

namespace cfdim {

extern const std::vector<std::string> kSweepFamilies;  // hensley good pair one-n fib

// Fills in family defaults for from/to when they are 0.
RunConfig resolve_family_defaults(const std::string& family, RunConfig cfg);
std::vector<long long> sweep_points(const RunConfig& cfg);
DimensionOptions dimension_options(const RunConfig& cfg);

// Throws ParseError for an unknown family.
SweepReport run_verify(const std::string& family, const RunConfig& cfg);

// Evaluates fn(i) for i < n on up to `jobs` threads; results keep index order.
// The first exception thrown by any worker is rethrown after all joined.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& fn) {
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const std::size_t width = std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < width; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cfdim
