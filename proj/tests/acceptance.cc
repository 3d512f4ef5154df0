// Runs each acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "gsp/harness.h"

namespace {

struct Criterion {
  int number;
  const char* suite;
  const char* title;
  double time_limit_s;  // 0 means no limit
};

const Criterion kCriteria[] = {
    {1, "fig1", "two-keyword example replay", 1.0},
    {2, "reverse-match", "reverse match keeps half of OPT and of |M|", 0},
    {3, "vc-lemma", "vertex cover reduction value", 0},
    {4, "sat-reduction", "3-SAT reduction value iff satisfiable", 0},
    {5, "partition", "PARTITION witness replay", 0},
    {6, "adversary", "deterministic online adversary", 0},
    {7, "chain-greedy", "greedy expectation on random chains", 0},
    {8, "duality", "ranking duality and deletion monotonicity", 0},
    {9, "kcopy-ranking", "ranking on left k-copies", 0},
    {10, "coupling", "ranking simulation coupling", 0},
    {11, "ranking-sim", "ranking simulation profit", 0},
    {12, "random-construction", "first-price to second-price construction", 0},
    {13, "top-c", "top-c guarantee", 0},
};

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      const gsp::VerifyReport r = gsp::verify(c.suite, {}, 1);
      ok = r.passed();
      int bad = 0;
      for (const auto& ch : r.checks) bad += !ch.passed;
      detail = std::to_string(r.checks.size()) + " checks, " +
               std::to_string(bad) + " failed";
      if (verbose || !ok) std::fputs(r.to_text().c_str(), stdout);
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      ok = false;
      detail += ", over time limit";
    }
    std::printf("criterion %2d %-4s %-20s %s (%s, %.2fs)\n", c.number,
                ok ? "PASS" : "FAIL", c.suite, c.title, detail.c_str(), secs);
    failed += !ok;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(kCriteria)) - failed,
              std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
