// Monte Carlo engine, statistics and the verification suites.
//
// Trial i of a run with base seed S always uses seed S + i, whatever the
// thread count, and per-trial values are integers summed exactly, so
// statistics are bit-identical across thread counts.

#ifndef GSP_HARNESS_H_
#define GSP_HARNESS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gsp/io.h"
#include "gsp/model.h"

namespace gsp {

struct TrialStats {
  std::int64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance; 0 for one trial
  double std_error = 0.0;  // sqrt(variance / trials)
  std::int64_t min = 0;
  std::int64_t max = 0;
};

// Exact running sums; merging is associative and commutative.
class TrialAccumulator {
 public:
  void add(std::int64_t x);
  void merge(const TrialAccumulator& other);
  std::int64_t count() const { return n_; }
  TrialStats stats() const;

 private:
  std::int64_t n_ = 0;
  __int128 sum_ = 0;
  __int128 sum_sq_ = 0;
  std::int64_t min_ = 0;
  std::int64_t max_ = 0;
};

Json stats_to_json(const TrialStats& s);

using TrialFn = std::function<std::int64_t(std::uint64_t seed)>;

// Runs trials 0..trials-1 with seeds seed+i on up to `threads` workers.
TrialStats run_trials(const TrialFn& fn, std::int64_t trials,
                      std::uint64_t seed, int threads = 1);

// Calls fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& fn);

// Trial function that runs the named online policy on a fixed instance and
// returns its realized value.
TrialFn online_trial(const std::string& algorithm, const Instance& inst);

struct Check {
  std::string name;
  std::string claim;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::map<std::string, std::int64_t> params;
  std::vector<Check> checks;

  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

using VerifyParams = std::map<std::string, std::int64_t>;

// Suite names in canonical order.
std::vector<std::string> suite_names();

// Default parameters of a suite.
VerifyParams suite_defaults(const std::string& suite);

// Runs `suite` with its defaults overridden by `params`. Unknown suite or
// parameter names throw.
VerifyReport verify(const std::string& suite, const VerifyParams& params,
                    std::uint64_t seed, int threads = 1);

}  // namespace gsp

#endif  // GSP_HARNESS_H_
