#include "doctest.h"
#include "gsp/bridge.h"
#include "gsp/generators.h"
#include "gsp/offline.h"
#include "oracles.h"

using namespace gsp;

namespace {

Instance one_keyword(const std::vector<Money>& bids, Money budget = 10) {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  for (std::size_t v = 0; v < bids.size(); ++v) {
    inst.add_bidder("v" + std::to_string(v + 1), budget);
    inst.set_bid(0, static_cast<int>(v), bids[v]);
  }
  return inst;
}

std::vector<Money> proxy_row(const Instance& inst) {
  const Instance p = second_price_proxy_bids(inst);
  std::vector<Money> out;
  for (int v = 0; v < p.num_bidders(); ++v) out.push_back(*p.bid(0, v));
  return out;
}

}  // namespace

TEST_CASE("proxy bids") {
  CHECK(proxy_row(one_keyword({4, 3, 1})) == std::vector<Money>{3, 1, 0});
  CHECK(proxy_row(one_keyword({3, 3})) == std::vector<Money>{3, 3});
  CHECK(proxy_row(one_keyword({5})) == std::vector<Money>{0});

  const Instance inst = one_keyword({4, 3, 3, 1});
  CHECK(proxy_source(inst, 0, 0) == 1);  // lowest index among the 3s
  CHECK(proxy_source(inst, 0, 1) == 2);
  CHECK(proxy_source(inst, 0, 3) == kNone);
}

TEST_CASE("proxy bids match the formula on random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_2paa({}, seed);
    const Instance p = second_price_proxy_bids(inst);
    for (int u = 0; u < inst.num_keywords(); ++u) {
      for (const auto& e : inst.bids_on(u)) {
        CHECK(*p.bid(u, e.bidder) == oracle::proxy_bid(inst, u, e.bidder));
      }
    }
  }
}

TEST_CASE("prefix normalization truncates after the budget is reached") {
  // One bidder, budget 5, proxy amounts 3, 3, 2 in arrival order.
  Instance proxy(Flavor::kAdAuction);
  proxy.add_bidder("v", 5);
  const Money amounts[] = {3, 3, 2};
  for (int u = 0; u < 3; ++u) {
    proxy.add_keyword("u" + std::to_string(u));
    proxy.set_bid(u, 0, amounts[u]);
  }
  const FirstPriceAllocation all{{0, 0, 0}};
  CHECK(!is_prefix_normalized(proxy, all));
  const FirstPriceAllocation n = normalize_prefix_budget(proxy, all);
  CHECK(n.assignment == std::vector<int>{0, 0, kNone});
  CHECK(first_price_value(proxy, n) == first_price_value(proxy, all));

  const FirstPriceAllocation two{{0, kNone, 0}};  // 3 + 2 = 5
  CHECK(is_prefix_normalized(proxy, two));
  CHECK(normalize_prefix_budget(proxy, two) == two);
}

TEST_CASE("random construction on one keyword") {
  const Instance inst = one_keyword({4, 3});
  const FirstPriceAllocation fp{{0}};
  Money sum = 0;
  for (int mask = 0; mask < 4; ++mask) {
    const std::vector<bool> marks{bool(mask & 1), bool(mask & 2)};
    const auto r = random_construction(inst, fp, marks);
    if (!marks[0] && marks[1]) {
      CHECK(r.allocation[0] == Decision::assign(0, 1));
      CHECK(r.ledger.total == 3);
    } else {
      CHECK(r.ledger.total == 0);
    }
    sum += r.ledger.total;
  }
  CHECK(sum == 3);  // expectation 3/4 >= 3/8
}

TEST_CASE("random construction keeps the better part of an overfull set") {
  // v0 (budget 5) wins three keywords whose proxy source is v1 each time:
  // proxy amounts 2, 2, 3 sum to 7 > 5. The prefix (2, 2) beats the last (3).
  Instance inst(Flavor::kAdAuction);
  inst.add_bidder("v0", 5);
  inst.add_bidder("v1", 5);
  const Money own[] = {3, 3, 4};
  const Money other[] = {2, 2, 3};
  for (int u = 0; u < 3; ++u) {
    inst.add_keyword("u" + std::to_string(u));
    inst.set_bid(u, 0, own[u]);
    inst.set_bid(u, 1, other[u]);
  }
  const FirstPriceAllocation fp{{0, 0, 0}};
  CHECK(is_prefix_normalized(second_price_proxy_bids(inst), fp));
  const auto r = random_construction(inst, fp, std::vector<bool>{false, true});
  CHECK(r.subset_sum[0] == 7);
  CHECK(r.allocation[2].is_skip());
  CHECK(r.ledger.total == 4);
  CHECK(2 * r.bidder_revenue[0] >= r.subset_sum[0]);
}

TEST_CASE("random construction rejects an unnormalized allocation") {
  Instance inst(Flavor::kAdAuction);
  inst.add_bidder("v0", 3);
  inst.add_bidder("v1", 3);
  for (int u = 0; u < 2; ++u) {
    inst.add_keyword("u" + std::to_string(u));
    inst.set_bid(u, 0, 3);
    inst.set_bid(u, 1, 3);
  }
  CHECK_THROWS_WITH_AS(random_construction(inst, {{0, 0}}, 1),
                       "first-price allocation is not prefix-normalized",
                       Error);
}

TEST_CASE("random construction guarantees on tiny instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Random2paaOptions o;
    o.num_keywords = 3;
    o.num_bidders = 3;
    o.bid_prob = 0.8;
    const Instance inst = gen_random_2paa(o, seed);
    const Instance proxy = second_price_proxy_bids(inst);
    const FirstPriceAllocation fp =
        normalize_prefix_budget(proxy, brute_force_1paa_opt(proxy).allocation);
    const Money y = first_price_value(proxy, fp);
    CHECK(oracle::best_first_price(proxy) >=
          oracle::best_second_price(inst));

    Money sum = 0;
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<bool> marks{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
      const auto r = random_construction(inst, fp, marks);
      // Every kept keyword is priced at its proxy bid.
      for (int u = 0; u < inst.num_keywords(); ++u) {
        const Decision& d = r.allocation[u];
        if (!d.is_skip()) CHECK(r.ledger.prices[u] == *proxy.bid(u, d.first));
      }
      for (int v = 0; v < 3; ++v) {
        if (marks[v]) CHECK(r.bidder_revenue[v] == 0);
        else CHECK(2 * r.bidder_revenue[v] >= r.subset_sum[v]);
      }
      sum += r.ledger.total;
    }
    CHECK(sum >= y);  // sum / 8 >= y / 8
  }
}
