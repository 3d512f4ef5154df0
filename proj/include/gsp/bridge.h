// Conversion between first-price and second-price allocations.
//
// The proxy-bid transform replaces every bid b[u][v] by
//
//   b'[u][v] = max { b[u][v'] : v' != v, b[u][v'] <= b[u][v] }   (0 if empty)
//
// i.e. the price v would pay if it won u with the best legal runner-up. A
// first-price allocation on the transformed instance is turned back into a
// second-price allocation on the original by random_construction, which
// keeps at least 1/8 of the first-price value in expectation.

#ifndef GSP_BRIDGE_H_
#define GSP_BRIDGE_H_

#include <cstdint>
#include <vector>

#include "gsp/model.h"
#include "gsp/offline.h"

namespace gsp {

Instance second_price_proxy_bids(const Instance& inst);

// s(u, v): the lowest-index bidder v' != v bidding on u with
// b[u][v'] = b'[u][v], or kNone when the maximization set is empty.
int proxy_source(const Instance& inst, int u, int v);

// Truncates each bidder's keyword sequence right after the first prefix whose
// b'-sum reaches the budget. The first-price value is unchanged.
FirstPriceAllocation normalize_prefix_budget(const Instance& proxy,
                                             const FirstPriceAllocation& f);

// True iff every bidder's budget can be reached only by its last keyword.
bool is_prefix_normalized(const Instance& proxy,
                          const FirstPriceAllocation& f);

struct RandomConstructionResult {
  Allocation allocation;
  Ledger ledger;
  std::vector<bool> marked;
  std::vector<Money> subset_sum;      // b'-sum over S_v (0 for marked v)
  std::vector<Money> bidder_revenue;  // realized price charged to v
};

// Marks bidders with one fair bit each (bidder index order), then for every
// unmarked v keeps the keywords of f whose proxy source is marked, pricing
// each with that source. `inst` is the original 2PAA instance and `fp` a
// prefix-normalized first-price allocation of its proxy instance.
RandomConstructionResult random_construction(const Instance& inst,
                                             const FirstPriceAllocation& fp,
                                             std::uint64_t seed);

// Same with explicit marks, for exhaustive enumeration.
RandomConstructionResult random_construction(const Instance& inst,
                                             const FirstPriceAllocation& fp,
                                             const std::vector<bool>& marked);

}  // namespace gsp

#endif  // GSP_BRIDGE_H_
