// Offline solvers: the ReverseMatch 2-approximation for 2PM, the top-c
// algorithm for 2PAA(c), and exact exhaustive oracles for small instances.

#ifndef GSP_OFFLINE_H_
#define GSP_OFFLINE_H_

#include <cstdint>
#include <vector>

#include "gsp/graph.h"
#include "gsp/model.h"

namespace gsp {

enum class EdgeClass { kUp, kDown };

// Classification of a non-matching edge (u, v) with respect to `f`: up iff v
// is matched and its keyword arrives before u.
EdgeClass classify_edge(const Matching& f, int u, int v);

struct ReverseMatchResult {
  Allocation allocation;
  Ledger ledger;
  int matching_size = 0;  // |f| of the initial maximum matching
};

ReverseMatchResult reverse_match(const Instance& inst);

SolveResult top_c_allocate(const Instance& inst, int c);

// Mask width of the 2PM dynamic program; bidders beyond this are rejected.
inline constexpr int kMaxOracleBidders = 64;
// Memo entries allowed before the 2PM oracle gives up.
inline constexpr std::size_t kMaxOracleStates = 20'000'000;

// Exact OPT for 2PM by DP over (keyword index, matched bidders). Bidders
// with no remaining neighbors are dropped from the key.
SolveResult brute_force_2pm_opt(const Instance& inst);
// Same, starting from `start` (clock 0) whose matched bidders are unavailable.
SolveResult brute_force_2pm_opt(const Instance& inst,
                                const AuctionState& start);

// Exact OPT for 2PAA by recursion over every Decision, memoized on
// (index, remaining budgets). Guarded to <= 6 keywords, <= 5 bidders,
// budgets <= 100.
SolveResult brute_force_2paa_opt(const Instance& inst);

// First-price allocation: keyword -> bidder or kNone.
struct FirstPriceAllocation {
  std::vector<int> assignment;

  friend bool operator==(const FirstPriceAllocation&,
                         const FirstPriceAllocation&) = default;
};

// First-price value: each bidder pays min(bid, remaining budget) per
// allocated keyword, i.e. min(B_v, sum of its bids).
Money first_price_value(const Instance& inst, const FirstPriceAllocation& f);

struct FirstPriceResult {
  FirstPriceAllocation allocation;
  Money value = 0;
};

// Exact first-price optimum by exhaustive assignment search. Guarded to
// <= 6 keywords, <= 5 bidders, budgets <= 100.
FirstPriceResult brute_force_1paa_opt(const Instance& inst);

}  // namespace gsp

#endif  // GSP_OFFLINE_H_
