// The online protocol and the online 2PM algorithms: Greedy, Ranking (as a
// 2PM policy), RankingSimulate and the trivial first-keyword policy, plus the
// graph-level Ranking / Ranking' processes on plain bipartite graphs.

#ifndef GSP_ONLINE_H_
#define GSP_ONLINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsp/graph.h"
#include "gsp/model.h"
#include "gsp/random.h"

namespace gsp {

// An online policy. It is shown one keyword at a time together with that
// keyword's bids and must answer with an irrevocable Decision. A policy is a
// deterministic function of its seed and of what it has been shown.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;

  // `unavailable` marks bidders that are already matched before the first
  // arrival (all false except in restricted chain instances).
  virtual void init(int num_bidders, const std::vector<bool>& unavailable,
                    std::uint64_t seed) = 0;

  virtual Decision on_arrival(int keyword, std::span<const BidEntry> bids) = 0;
};

// Feeds `inst` to `alg` in arrival order and prices each answer.
SolveResult run_online(const Instance& inst, OnlineAlgorithm& alg,
                       std::uint64_t seed);
SolveResult run_online(const Instance& inst, OnlineAlgorithm& alg,
                       std::uint64_t seed, const AuctionState& start);

enum class TieBreak { kLowestIndex, kRandom };

// Assigns a keyword iff at least two neighbors are still unmatched. The
// first-price bidder is the lowest-index such neighbor (or a uniformly random
// one under TieBreak::kRandom); the second is the lowest-index other one.
class GreedyAlgorithm : public OnlineAlgorithm {
 public:
  explicit GreedyAlgorithm(TieBreak tie_break = TieBreak::kLowestIndex)
      : tie_break_(tie_break) {}

  std::string name() const override { return "greedy"; }
  void init(int num_bidders, const std::vector<bool>& unavailable,
            std::uint64_t seed) override;
  Decision on_arrival(int keyword, std::span<const BidEntry> bids) override;

 private:
  TieBreak tie_break_;
  std::vector<bool> matched_;
  Rng rng_{0};
};

// Ranking run directly as a 2PM policy: match to the best-ranked unmatched
// neighbor, naming the next best-ranked unmatched neighbor as second.
class RankingAlgorithm : public OnlineAlgorithm {
 public:
  RankingAlgorithm() = default;
  explicit RankingAlgorithm(Ranking sigma) : fixed_(std::move(sigma)) {}

  std::string name() const override { return "ranking"; }
  void init(int num_bidders, const std::vector<bool>& unavailable,
            std::uint64_t seed) override;
  Decision on_arrival(int keyword, std::span<const BidEntry> bids) override;

 private:
  std::optional<Ranking> fixed_;
  Ranking sigma_;
  std::vector<bool> matched_;
};

struct SimulateState {
  std::vector<bool> matched;   // M
  std::vector<bool> reserved;  // R
  Ranking sigma;
  std::size_t coins_used = 0;
};

class RankingSimulateAlgorithm : public OnlineAlgorithm {
 public:
  // Draws sigma and coins from the seed passed to init().
  RankingSimulateAlgorithm() = default;
  RankingSimulateAlgorithm(Ranking sigma, CoinStream coins)
      : fixed_sigma_(std::move(sigma)), fixed_coins_(std::move(coins)) {}

  std::string name() const override { return "ranking-sim"; }
  void init(int num_bidders, const std::vector<bool>& unavailable,
            std::uint64_t seed) override;
  Decision on_arrival(int keyword, std::span<const BidEntry> bids) override;

  const SimulateState& state() const { return state_; }

 private:
  std::optional<Ranking> fixed_sigma_;
  std::optional<CoinStream> fixed_coins_;
  SimulateState state_;
  CoinStream coins_{0};
};

// Assigns the first keyword to its two lowest-index neighbors and skips the
// rest.
class TrivialFirstAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "trivial"; }
  void init(int num_bidders, const std::vector<bool>& unavailable,
            std::uint64_t seed) override;
  Decision on_arrival(int keyword, std::span<const BidEntry> bids) override;

 private:
  bool first_ = true;
};

class AlwaysSkipAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "skip"; }
  void init(int, const std::vector<bool>&, std::uint64_t) override {}
  Decision on_arrival(int, std::span<const BidEntry>) override {
    return Decision::skip();
  }
};

// Builds a policy by CLI name: greedy, greedy-random, ranking, ranking-sim,
// trivial, skip.
std::unique_ptr<OnlineAlgorithm> make_online_algorithm(const std::string& name);

SolveResult greedy_2pm(const Instance& inst,
                       TieBreak tie_break = TieBreak::kLowestIndex,
                       std::uint64_t seed = 0);

SolveResult trivial_first(const Instance& inst);

struct SimulateResult {
  Allocation allocation;
  Ledger ledger;
  SimulateState state;
};

SimulateResult ranking_simulate(const Instance& inst, const Ranking& sigma,
                                CoinStream coins);

// Graph-level Ranking: keywords arrive in the order `pi` (a permutation of
// the left vertices) and each takes its best-ranked unmatched neighbor.
Matching ranking(const BipartiteGraph& graph, std::span<const int> pi,
                 const Ranking& sigma);

// The dual process: bidders arrive in rank order and each takes the
// earliest-arriving unmatched neighbor.
Matching ranking_prime(const BipartiteGraph& graph, std::span<const int> pi,
                       const Ranking& sigma);

std::vector<int> identity_order(int n);

}  // namespace gsp

#endif  // GSP_ONLINE_H_
