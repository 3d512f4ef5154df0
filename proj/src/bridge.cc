#include "gsp/bridge.h"

#include "gsp/random.h"

namespace gsp {

namespace {

Money proxy_bid(const Instance& inst, int u, int v, int* source) {
  const auto own = inst.bid(u, v);
  if (!own) throw Error("proxy bid of a missing bid");
  Money best = 0;
  int best_bidder = kNone;
  for (const auto& e : inst.bids_on(u)) {
    if (e.bidder == v || e.amount > *own) continue;
    if (best_bidder == kNone || e.amount > best) {
      best = e.amount;
      best_bidder = e.bidder;
    }
  }
  if (source) *source = best_bidder;
  return best;
}

}  // namespace

Instance second_price_proxy_bids(const Instance& inst) {
  if (inst.flavor() != Flavor::kAdAuction) {
    throw Error("second_price_proxy_bids: requires a 2PAA instance");
  }
  Instance out(inst.flavor());
  for (const auto& b : inst.bidders()) out.add_bidder(b.id, b.budget);
  for (int u = 0; u < inst.num_keywords(); ++u) {
    out.add_keyword(inst.keyword_id(u));
    for (const auto& e : inst.bids_on(u)) {
      out.set_bid(u, e.bidder, proxy_bid(inst, u, e.bidder, nullptr));
    }
  }
  return out;
}

int proxy_source(const Instance& inst, int u, int v) {
  int source = kNone;
  proxy_bid(inst, u, v, &source);
  return source;
}

namespace {

void check_allocation(const Instance& proxy, const FirstPriceAllocation& f) {
  if (static_cast<int>(f.assignment.size()) != proxy.num_keywords()) {
    throw Error("first-price allocation has wrong length");
  }
  for (int u = 0; u < proxy.num_keywords(); ++u) {
    const int v = f.assignment[u];
    if (v == kNone) continue;
    auto b = v >= 0 && v < proxy.num_bidders() ? proxy.bid(u, v) : std::nullopt;
    if (!b || *b <= 0) {
      throw Error("first-price allocation uses a non-positive proxy bid");
    }
  }
}

}  // namespace

FirstPriceAllocation normalize_prefix_budget(const Instance& proxy,
                                             const FirstPriceAllocation& f) {
  check_allocation(proxy, f);
  FirstPriceAllocation out = f;
  std::vector<Money> spent(proxy.num_bidders(), 0);
  for (int u = 0; u < proxy.num_keywords(); ++u) {
    const int v = out.assignment[u];
    if (v == kNone) continue;
    if (spent[v] >= proxy.bidder(v).budget) {
      out.assignment[u] = kNone;
      continue;
    }
    spent[v] += *proxy.bid(u, v);
  }
  return out;
}

bool is_prefix_normalized(const Instance& proxy,
                          const FirstPriceAllocation& f) {
  check_allocation(proxy, f);
  std::vector<Money> spent(proxy.num_bidders(), 0);
  for (int u = 0; u < proxy.num_keywords(); ++u) {
    const int v = f.assignment[u];
    if (v == kNone) continue;
    if (spent[v] >= proxy.bidder(v).budget) return false;
    spent[v] += *proxy.bid(u, v);
  }
  return true;
}

RandomConstructionResult random_construction(const Instance& inst,
                                             const FirstPriceAllocation& fp,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<bool> marked(inst.num_bidders());
  for (int v = 0; v < inst.num_bidders(); ++v) marked[v] = rng.bit();
  return random_construction(inst, fp, marked);
}

RandomConstructionResult random_construction(const Instance& inst,
                                             const FirstPriceAllocation& fp,
                                             const std::vector<bool>& marked) {
  const Instance proxy = second_price_proxy_bids(inst);
  if (!is_prefix_normalized(proxy, fp)) {
    throw Error("first-price allocation is not prefix-normalized");
  }
  const int n = inst.num_bidders();
  if (static_cast<int>(marked.size()) != n) throw Error("marks have wrong size");

  RandomConstructionResult out;
  out.marked = marked;
  out.subset_sum.assign(n, 0);
  out.bidder_revenue.assign(n, 0);
  out.allocation.assign(inst.num_keywords(), Decision::skip());

  for (int v = 0; v < n; ++v) {
    if (marked[v]) continue;
    std::vector<int> subset;
    for (int u = 0; u < inst.num_keywords(); ++u) {
      if (fp.assignment[u] != v) continue;
      const int s = proxy_source(inst, u, v);
      if (s != kNone && marked[s]) subset.push_back(u);
    }
    if (subset.empty()) continue;
    Money total = 0;
    for (int u : subset) total += *proxy.bid(u, v);
    out.subset_sum[v] = total;

    std::vector<int> keep = subset;
    if (total > inst.bidder(v).budget) {
      const int last = subset.back();
      const Money last_bid = *proxy.bid(last, v);
      if (total - last_bid >= last_bid) {
        keep.pop_back();
      } else {
        keep = {last};
      }
    }
    for (int u : keep) {
      out.allocation[u] = Decision::assign(v, proxy_source(inst, u, v));
    }
  }

  out.ledger = run_allocation(inst, out.allocation);
  for (int u = 0; u < inst.num_keywords(); ++u) {
    const Decision& d = out.allocation[u];
    if (!d.is_skip()) out.bidder_revenue[d.first] += out.ledger.prices[u];
  }
  return out;
}

}  // namespace gsp
