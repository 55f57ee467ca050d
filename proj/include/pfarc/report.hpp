#pragma once

// Verification reports and the worker pool that fills them.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace pfarc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "pfarc-report/1";

/// PFARC_THREADS, when set to a positive integer, wins over the flag value.
/// The result is at least 1.
int resolve_threads(int flag_value);

/// Runs fn(0) .. fn(n-1) on up to `threads` workers and returns the results
/// in index order. The first exception thrown by a task is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const std::size_t width = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Assembles a report. Every cell must carry a "verdict" of "pass" or "fail";
/// the overall verdict is pass iff every cell passes. Timing lives under its
/// own key so the rest of the document is reproducible byte for byte.
nlohmann::json make_report(const std::string& command, const std::string& check, nlohmann::json config,
                           nlohmann::json cells, double wall_clock_seconds, nlohmann::json notes = nullptr);

bool report_passed(const nlohmann::json& report);

/// Two-space indented dump with a trailing newline.
std::string serialize(const nlohmann::json& report);

}  // namespace pfarc
