#include "gsp/harness.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "gsp/online.h"

namespace gsp {

void TrialAccumulator::add(std::int64_t x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++n_;
  sum_ += x;
  sum_sq_ += static_cast<__int128>(x) * x;
}

void TrialAccumulator::merge(const TrialAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  n_ += other.n_;
  sum_ += other.sum_;
  sum_sq_ += other.sum_sq_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

TrialStats TrialAccumulator::stats() const {
  TrialStats s;
  s.trials = n_;
  if (n_ == 0) return s;
  s.min = min_;
  s.max = max_;
  s.mean = static_cast<double>(static_cast<long double>(sum_) / n_);
  if (n_ > 1) {
    // n * sum_sq - sum^2 is exact and nonnegative.
    const __int128 num = static_cast<__int128>(n_) * sum_sq_ - sum_ * sum_;
    const long double den = static_cast<long double>(n_) * (n_ - 1);
    s.variance = static_cast<double>(static_cast<long double>(num) / den);
  }
  s.std_error = std::sqrt(s.variance / static_cast<double>(n_));
  return s;
}

Json stats_to_json(const TrialStats& s) {
  return {{"trials", s.trials},       {"mean", s.mean},
          {"variance", s.variance},   {"std_error", s.std_error},
          {"min", s.min},             {"max", s.max}};
}

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers =
      static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(
                                                     std::max(threads, 1), n)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    constexpr std::int64_t kChunk = 64;
    while (!failed.load()) {
      const std::int64_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::int64_t end = std::min(n, begin + kChunk);
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

TrialStats run_trials(const TrialFn& fn, std::int64_t trials,
                      std::uint64_t seed, int threads) {
  if (trials < 1) throw Error("trials must be at least 1");
  std::vector<std::int64_t> values(trials);
  parallel_for(trials, threads, [&](std::int64_t i) {
    try {
      values[i] = fn(seed + static_cast<std::uint64_t>(i));
    } catch (const std::exception& e) {
      throw Error("trial " + std::to_string(i) + ": " + e.what());
    }
  });
  TrialAccumulator acc;
  for (auto x : values) acc.add(x);
  return acc.stats();
}

TrialFn online_trial(const std::string& algorithm, const Instance& inst) {
  make_online_algorithm(algorithm);  // reject unknown names up front
  return [algorithm, &inst](std::uint64_t seed) -> std::int64_t {
    auto alg = make_online_algorithm(algorithm);
    return run_online(inst, *alg, seed).ledger.total;
  };
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

Json VerifyReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["params"] = Json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"claim", c.claim},
                           {"expected", c.expected},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed}});
  }
  j["passed"] = passed();
  return j;
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << "  seed " << seed;
  for (const auto& [k, v] : params) os << "  " << k << '=' << v;
  os << '\n';

  std::vector<std::array<std::string, 6>> rows;
  rows.push_back({"check", "expected", "measured", "tolerance", "result",
                  "claim"});
  for (const auto& c : checks) {
    rows.push_back({c.name, num(c.expected), num(c.measured), num(c.tolerance),
                    c.passed ? "pass" : "FAIL", c.claim});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& r : rows) {
    for (int i = 0; i < 6; ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    for (int i = 0; i < 5; ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << r[i] << "  ";
    }
    os << r[5] << '\n';
  }
  os << (passed() ? "PASSED" : "FAILED") << '\n';
  return os.str();
}

}  // namespace gsp
