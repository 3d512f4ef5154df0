#include "gsp/online.h"

#include <algorithm>
#include <numeric>

namespace gsp {

SolveResult run_online(const Instance& inst, OnlineAlgorithm& alg,
                       std::uint64_t seed) {
  return run_online(inst, alg, seed, initial_state(inst));
}

SolveResult run_online(const Instance& inst, OnlineAlgorithm& alg,
                       std::uint64_t seed, const AuctionState& start) {
  alg.init(inst.num_bidders(), start.matched, seed);
  Arbiter arbiter(inst, start);
  SolveResult result;
  for (int u = 0; u < inst.num_keywords(); ++u) {
    Decision d = alg.on_arrival(u, inst.bids_on(u));
    arbiter.apply(d);
    result.allocation.push_back(d);
  }
  result.ledger = arbiter.ledger();
  return result;
}

namespace {

// Positive-bid neighbors of a keyword that are not flagged in `taken`.
std::vector<int> open_neighbors(std::span<const BidEntry> bids,
                                const std::vector<bool>& taken) {
  std::vector<int> out;
  for (const auto& e : bids) {
    if (e.amount > 0 && !taken[e.bidder]) out.push_back(e.bidder);
  }
  return out;
}

void sort_by_rank(std::vector<int>& bidders, const Ranking& sigma) {
  std::sort(bidders.begin(), bidders.end(),
            [&](int a, int b) { return sigma.rank[a] < sigma.rank[b]; });
}

}  // namespace

void GreedyAlgorithm::init(int num_bidders,
                           const std::vector<bool>& unavailable,
                           std::uint64_t seed) {
  matched_ = unavailable;
  matched_.resize(num_bidders, false);
  rng_ = Rng(seed);
}

Decision GreedyAlgorithm::on_arrival(int, std::span<const BidEntry> bids) {
  const std::vector<int> open = open_neighbors(bids, matched_);
  if (open.size() < 2) return Decision::skip();
  std::size_t pick = 0;
  if (tie_break_ == TieBreak::kRandom) pick = rng_.below(open.size());
  const int first = open[pick];
  const int second = open[pick == 0 ? 1 : 0];
  matched_[first] = true;
  return Decision::assign(first, second);
}

void RankingAlgorithm::init(int num_bidders,
                            const std::vector<bool>& unavailable,
                            std::uint64_t seed) {
  sigma_ = fixed_ ? *fixed_ : make_permutation(derive_seed(seed, 0), num_bidders);
  if (sigma_.size() != num_bidders) throw Error("ranking size mismatch");
  matched_ = unavailable;
  matched_.resize(num_bidders, false);
}

Decision RankingAlgorithm::on_arrival(int, std::span<const BidEntry> bids) {
  std::vector<int> open = open_neighbors(bids, matched_);
  if (open.empty()) return Decision::skip();
  sort_by_rank(open, sigma_);
  matched_[open[0]] = true;
  if (open.size() == 1) return Decision::assign(open[0]);
  return Decision::assign(open[0], open[1]);
}

void RankingSimulateAlgorithm::init(int num_bidders,
                                    const std::vector<bool>& unavailable,
                                    std::uint64_t seed) {
  state_ = SimulateState{};
  state_.sigma = fixed_sigma_
                     ? *fixed_sigma_
                     : make_permutation(derive_seed(seed, 0), num_bidders);
  if (state_.sigma.size() != num_bidders) throw Error("ranking size mismatch");
  coins_ = fixed_coins_ ? *fixed_coins_ : make_coins(derive_seed(seed, 1));
  state_.matched = unavailable;
  state_.matched.resize(num_bidders, false);
  state_.reserved.assign(num_bidders, false);
}

Decision RankingSimulateAlgorithm::on_arrival(int,
                                              std::span<const BidEntry> bids) {
  auto& M = state_.matched;
  auto& R = state_.reserved;
  std::vector<bool> taken(M.size());
  for (std::size_t v = 0; v < M.size(); ++v) taken[v] = M[v] || R[v];
  std::vector<int> open = open_neighbors(bids, taken);
  if (open.empty()) return Decision::skip();
  sort_by_rank(open, state_.sigma);

  const bool heads = coins_.next();
  ++state_.coins_used;
  int first = kNone;
  if (open.size() == 1) {
    if (heads) {
      first = open[0];
      M[first] = true;
    } else {
      R[open[0]] = true;
      return Decision::skip();
    }
  } else {
    const int v1 = open[0], v2 = open[1];
    first = heads ? v1 : v2;
    M[first] = true;
    R[heads ? v2 : v1] = true;
  }

  // Any neighbor outside M can price the match; reserved bidders qualify.
  std::vector<int> priced = open_neighbors(bids, M);
  sort_by_rank(priced, state_.sigma);
  if (priced.empty()) return Decision::assign(first);
  return Decision::assign(first, priced.front());
}

void TrivialFirstAlgorithm::init(int, const std::vector<bool>&,
                                 std::uint64_t) {
  first_ = true;
}

Decision TrivialFirstAlgorithm::on_arrival(int,
                                           std::span<const BidEntry> bids) {
  if (!first_) return Decision::skip();
  first_ = false;
  std::vector<int> nbrs;
  for (const auto& e : bids) {
    if (e.amount > 0) nbrs.push_back(e.bidder);
  }
  if (nbrs.empty()) return Decision::skip();
  if (nbrs.size() == 1) return Decision::assign(nbrs[0]);
  return Decision::assign(nbrs[0], nbrs[1]);
}

std::unique_ptr<OnlineAlgorithm> make_online_algorithm(
    const std::string& name) {
  if (name == "greedy") return std::make_unique<GreedyAlgorithm>();
  if (name == "greedy-random") {
    return std::make_unique<GreedyAlgorithm>(TieBreak::kRandom);
  }
  if (name == "ranking") return std::make_unique<RankingAlgorithm>();
  if (name == "ranking-sim") {
    return std::make_unique<RankingSimulateAlgorithm>();
  }
  if (name == "trivial") return std::make_unique<TrivialFirstAlgorithm>();
  if (name == "skip") return std::make_unique<AlwaysSkipAlgorithm>();
  throw Error("unknown online algorithm '" + name + "'");
}

SolveResult greedy_2pm(const Instance& inst, TieBreak tie_break,
                       std::uint64_t seed) {
  GreedyAlgorithm alg(tie_break);
  return run_online(inst, alg, seed);
}

SolveResult trivial_first(const Instance& inst) {
  TrivialFirstAlgorithm alg;
  return run_online(inst, alg, 0);
}

SimulateResult ranking_simulate(const Instance& inst, const Ranking& sigma,
                                CoinStream coins) {
  RankingSimulateAlgorithm alg(sigma, std::move(coins));
  SolveResult r = run_online(inst, alg, 0);
  return {std::move(r.allocation), std::move(r.ledger), alg.state()};
}

namespace {

void check_order(const BipartiteGraph& graph, std::span<const int> pi,
                 const Ranking& sigma) {
  if (static_cast<int>(pi.size()) != graph.num_left) {
    throw Error("arrival order does not cover the keywords");
  }
  if (sigma.size() != graph.num_right) {
    throw Error("ranking does not cover the bidders");
  }
}

}  // namespace

Matching ranking(const BipartiteGraph& graph, std::span<const int> pi,
                 const Ranking& sigma) {
  check_order(graph, pi, sigma);
  Matching m(graph.num_left, graph.num_right);
  for (int u : pi) {
    int best = kNone;
    for (int v : graph.adj[u]) {
      if (!m.bidder_matched(v) &&
          (best == kNone || sigma.rank[v] < sigma.rank[best])) {
        best = v;
      }
    }
    if (best != kNone) m.match(u, best);
  }
  return m;
}

Matching ranking_prime(const BipartiteGraph& graph, std::span<const int> pi,
                       const Ranking& sigma) {
  check_order(graph, pi, sigma);
  std::vector<int> position(graph.num_left, kNone);
  for (std::size_t i = 0; i < pi.size(); ++i) position[pi[i]] = static_cast<int>(i);
  const auto radj = graph.right_adjacency();
  Matching m(graph.num_left, graph.num_right);
  for (int v : sigma.order) {
    int best = kNone;
    for (int u : radj[v]) {
      if (!m.keyword_matched(u) &&
          (best == kNone || position[u] < position[best])) {
        best = u;
      }
    }
    if (best != kNone) m.match(best, v);
  }
  return m;
}

std::vector<int> identity_order(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace gsp
