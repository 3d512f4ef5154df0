#include "gsp/offline.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <numeric>
#include <unordered_map>

namespace gsp {

EdgeClass classify_edge(const Matching& f, int u, int v) {
  return f.bidder_matched(v) && f.keyword_of(v) < u ? EdgeClass::kUp
                                                    : EdgeClass::kDown;
}

namespace {

void require_matching_flavor(const Instance& inst, const char* who) {
  if (inst.flavor() != Flavor::kMatching) {
    throw Error(std::string(who) + ": requires a 2PM instance");
  }
}

void require_ad_auction_flavor(const Instance& inst, const char* who) {
  if (inst.flavor() != Flavor::kAdAuction) {
    throw Error(std::string(who) + ": requires a 2PAA instance");
  }
}

}  // namespace

ReverseMatchResult reverse_match(const Instance& inst) {
  require_matching_flavor(inst, "reverse_match");
  for (int u = 0; u < inst.num_keywords(); ++u) {
    if (inst.degree(u) < 2) {
      throw Error("reverse_match: keyword '" + inst.keyword_id(u) +
                  "' has degree < 2");
    }
  }
  const BipartiteGraph g = to_graph(inst);
  Matching f = maximum_bipartite_matching(g);

  ReverseMatchResult result;
  result.matching_size = f.size();
  result.allocation.assign(inst.num_keywords(), Decision::skip());

  for (int u = inst.num_keywords() - 1; u >= 0; --u) {
    if (!f.keyword_matched(u)) continue;
    const int first = f.bidder_of(u);
    int second = kNone;
    for (int v : g.adj[u]) {
      if (v != first && classify_edge(f, u, v) == EdgeClass::kDown) {
        second = v;
        break;
      }
    }
    if (second == kNone) {
      // Every other neighbor is an up-edge endpoint; free the lowest one.
      for (int v : g.adj[u]) {
        if (v != first) {
          second = v;
          break;
        }
      }
      assert(second != kNone);
      const int displaced = f.keyword_of(second);
      assert(displaced != kNone && displaced < u);
      f.unmatch_keyword(displaced);
    }
    result.allocation[u] = Decision::assign(first, second);
  }
  result.ledger = run_allocation(inst, result.allocation);
  return result;
}

SolveResult top_c_allocate(const Instance& inst, int c) {
  require_ad_auction_flavor(inst, "top_c_allocate");
  if (c < 1) throw Error("top_c_allocate: c must be positive");
  bool any_positive = false;
  for (int u = 0; u < inst.num_keywords() && !any_positive; ++u) {
    for (const auto& e : inst.bids_on(u)) any_positive |= e.amount > 0;
  }
  if (any_positive && r_min(inst) < Rational{c, 1}) {
    throw Error("precondition R_min >= c violated");
  }

  const int m = inst.num_keywords();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return second_highest_bid(inst, a) > second_highest_bid(inst, b);
  });

  SolveResult result;
  result.allocation.assign(m, Decision::skip());
  for (int i = 0; i < std::min(c, m); ++i) {
    const int u = order[i];
    int top = kNone, runner = kNone;
    Money top_bid = -1, runner_bid = -1;
    for (const auto& e : inst.bids_on(u)) {
      if (e.amount > top_bid) {
        runner = top;
        runner_bid = top_bid;
        top = e.bidder;
        top_bid = e.amount;
      } else if (e.amount > runner_bid) {
        runner = e.bidder;
        runner_bid = e.amount;
      }
    }
    if (runner != kNone) result.allocation[u] = Decision::assign(top, runner);
  }
  result.ledger = run_allocation(inst, result.allocation);
  return result;
}

namespace {

class MatchingOracle {
 public:
  explicit MatchingOracle(const Instance& inst)
      : m_(inst.num_keywords()), nbr_(m_), live_(m_ + 1, 0), memo_(m_) {
    for (int u = 0; u < m_; ++u) {
      for (const auto& e : inst.bids_on(u)) {
        if (e.amount > 0) nbr_[u] |= std::uint64_t{1} << e.bidder;
      }
    }
    for (int u = m_ - 1; u >= 0; --u) live_[u] = live_[u + 1] | nbr_[u];
  }

  int value(int i, std::uint64_t used) {
    if (i == m_) return 0;
    used &= live_[i];
    auto& level = memo_[i];
    if (auto it = level.find(used); it != level.end()) return it->second;
    if (++states_ > kMaxOracleStates) {
      throw Error("instance too large for oracle");
    }
    const std::uint64_t free = nbr_[i] & ~used;
    const int profit = std::popcount(free) >= 2 ? 1 : 0;
    int best = value(i + 1, used);
    for (std::uint64_t rest = free; rest; rest &= rest - 1) {
      const std::uint64_t bit = rest & (~rest + 1);
      best = std::max(best, profit + value(i + 1, used | bit));
    }
    level.emplace(used, best);
    return best;
  }

  // Walks one optimal path from `used`.
  Allocation reconstruct(std::uint64_t used) {
    Allocation out;
    for (int i = 0; i < m_; ++i) {
      const int target = value(i, used);
      const std::uint64_t free = nbr_[i] & ~used & live_[i];
      const int profit = std::popcount(free) >= 2 ? 1 : 0;
      Decision chosen = Decision::skip();
      std::uint64_t chosen_bit = 0;
      bool found = false;
      auto try_assign = [&]() {
        for (std::uint64_t rest = free; rest && !found; rest &= rest - 1) {
          const std::uint64_t bit = rest & (~rest + 1);
          if (profit + value(i + 1, used | bit) == target) {
            const int v = std::countr_zero(bit);
            std::optional<int> second;
            if (profit) second = std::countr_zero(free & ~bit);
            chosen = Decision::assign(v, second);
            chosen_bit = bit;
            found = true;
          }
        }
      };
      if (profit) try_assign();
      if (!found && value(i + 1, used) == target) found = true;
      if (!found) try_assign();
      assert(found);
      out.push_back(chosen);
      used |= chosen_bit;
    }
    return out;
  }

 private:
  int m_;
  std::vector<std::uint64_t> nbr_;
  std::vector<std::uint64_t> live_;
  std::vector<std::unordered_map<std::uint64_t, int>> memo_;
  std::size_t states_ = 0;
};

}  // namespace

SolveResult brute_force_2pm_opt(const Instance& inst) {
  return brute_force_2pm_opt(inst, initial_state(inst));
}

SolveResult brute_force_2pm_opt(const Instance& inst,
                                const AuctionState& start) {
  require_matching_flavor(inst, "brute_force_2pm_opt");
  if (inst.num_bidders() > kMaxOracleBidders) {
    throw Error("instance too large for oracle");
  }
  if (start.clock != 0) throw Error("brute_force_2pm_opt: start clock != 0");
  std::uint64_t used = 0;
  for (int v = 0; v < inst.num_bidders(); ++v) {
    if (start.matched.at(v)) used |= std::uint64_t{1} << v;
  }
  MatchingOracle oracle(inst);
  SolveResult result;
  result.allocation = oracle.reconstruct(used);
  result.ledger = run_allocation(inst, result.allocation, start);
  return result;
}

namespace {

void check_small(const Instance& inst, const char* who) {
  if (inst.num_keywords() > 6 || inst.num_bidders() > 5) {
    throw Error(std::string(who) + ": instance too large for oracle");
  }
  for (const auto& b : inst.bidders()) {
    if (b.budget > 100) {
      throw Error(std::string(who) + ": budget too large for oracle");
    }
  }
}

class AdAuctionOracle {
 public:
  explicit AdAuctionOracle(const Instance& inst) : inst_(inst) {}

  Money value(const AuctionState& s) {
    if (s.clock == inst_.num_keywords()) return 0;
    auto key = std::make_pair(s.clock, s.remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Money best = 0;
    for_each_decision(s, [&](const Decision&, const Applied& next) {
      best = std::max(best, next.price + value(next.state));
    });
    memo_.emplace(std::move(key), best);
    return best;
  }

  Allocation reconstruct() {
    Allocation out;
    AuctionState s = initial_state(inst_);
    while (s.clock < inst_.num_keywords()) {
      const Money target = value(s);
      std::optional<Decision> pick;
      AuctionState next_state;
      for_each_decision(s, [&](const Decision& d, const Applied& next) {
        if (!pick && next.price + value(next.state) == target) {
          pick = d;
          next_state = next.state;
        }
      });
      out.push_back(*pick);
      s = std::move(next_state);
    }
    return out;
  }

 private:
  // Skip, every lone Assign(v1), and every feasible ordered Assign(v1, v2).
  template <typename Fn>
  void for_each_decision(const AuctionState& s, Fn&& fn) {
    const int u = s.clock;
    std::vector<Decision> options{Decision::skip()};
    const auto bids = inst_.bids_on(u);
    for (const auto& a : bids) {
      options.push_back(Decision::assign(a.bidder));
      const Money ea = effective_bid(inst_, s, u, a.bidder);
      for (const auto& b : bids) {
        if (b.bidder == a.bidder) continue;
        if (ea >= effective_bid(inst_, s, u, b.bidder)) {
          options.push_back(Decision::assign(a.bidder, b.bidder));
        }
      }
    }
    for (const auto& d : options) fn(d, apply_decision(inst_, s, d));
  }

  const Instance& inst_;
  std::map<std::pair<int, std::vector<Money>>, Money> memo_;
};

}  // namespace

SolveResult brute_force_2paa_opt(const Instance& inst) {
  require_ad_auction_flavor(inst, "brute_force_2paa_opt");
  check_small(inst, "brute_force_2paa_opt");
  AdAuctionOracle oracle(inst);
  SolveResult result;
  result.allocation = oracle.reconstruct();
  result.ledger = run_allocation(inst, result.allocation);
  return result;
}

Money first_price_value(const Instance& inst, const FirstPriceAllocation& f) {
  if (static_cast<int>(f.assignment.size()) != inst.num_keywords()) {
    throw Error("first-price allocation has wrong length");
  }
  std::vector<Money> spent(inst.num_bidders(), 0);
  for (int u = 0; u < inst.num_keywords(); ++u) {
    const int v = f.assignment[u];
    if (v == kNone) continue;
    auto b = inst.bid(u, v);
    if (!b) throw Error("first-price allocation uses a missing bid");
    spent[v] += *b;
  }
  Money total = 0;
  for (int v = 0; v < inst.num_bidders(); ++v) {
    total += std::min(spent[v], inst.bidder(v).budget);
  }
  return total;
}

FirstPriceResult brute_force_1paa_opt(const Instance& inst) {
  check_small(inst, "brute_force_1paa_opt");
  const int m = inst.num_keywords();
  FirstPriceResult best;
  best.allocation.assignment.assign(m, kNone);
  best.value = 0;

  FirstPriceAllocation cur;
  cur.assignment.assign(m, kNone);
  auto recurse = [&](auto&& self, int u) -> void {
    if (u == m) {
      const Money v = first_price_value(inst, cur);
      if (v > best.value) {
        best.value = v;
        best.allocation = cur;
      }
      return;
    }
    cur.assignment[u] = kNone;
    self(self, u + 1);
    for (const auto& e : inst.bids_on(u)) {
      if (e.amount <= 0) continue;
      cur.assignment[u] = e.bidder;
      self(self, u + 1);
    }
    cur.assignment[u] = kNone;
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace gsp
