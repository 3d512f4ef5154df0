#include "doctest.h"
#include "gsp/model.h"
#include "gsp/generators.h"
#include "gsp/random.h"
#include "oracles.h"

using namespace gsp;

namespace {

// Two keywords. Bidder 1 (budget 6) bids 4 and 6, bidder 2 (budget 3) bids 3
// on the first, bidder 3 (budget 5) bids 3 on the second.
Instance two_keyword_example() {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("k1");
  inst.add_keyword("k2");
  inst.add_bidder("b1", 6);
  inst.add_bidder("b2", 3);
  inst.add_bidder("b3", 5);
  inst.set_bid(0, 0, 4);
  inst.set_bid(0, 1, 3);
  inst.set_bid(1, 0, 6);
  inst.set_bid(1, 2, 3);
  return inst;
}

Instance pair_2pm() {
  Instance inst(Flavor::kMatching);
  inst.add_keyword("u");
  inst.add_bidder("a", 1);
  inst.add_bidder("b", 1);
  inst.set_bid(0, 0, 1);
  inst.set_bid(0, 1, 1);
  return inst;
}

}  // namespace

TEST_CASE("validation accepts a well-formed 2PM instance") {
  CHECK(validate_instance(pair_2pm()).ok());
}

TEST_CASE("validation flags a 2PM keyword of degree one") {
  Instance inst(Flavor::kMatching);
  inst.add_keyword("u");
  inst.add_bidder("a", 1);
  inst.set_bid(0, 0, 1);
  auto r = validate_instance(inst);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].find("keyword degree < 2") != std::string::npos);
}

TEST_CASE("validation flags bids above budget and duplicate ids") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  inst.add_keyword("u");
  inst.add_bidder("v", 5);
  inst.set_bid(0, 0, 7);
  auto r = validate_instance(inst);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].find("duplicate keyword") != std::string::npos);
  CHECK(r.violations[1].find("bid exceeds budget") != std::string::npos);
}

TEST_CASE("effective bid clamps to the remaining budget") {
  Instance inst = two_keyword_example();
  AuctionState s = initial_state(inst);
  CHECK(effective_bid(inst, s, 1, 0) == 6);
  s.remaining[0] = 3;
  CHECK(effective_bid(inst, s, 1, 0) == 3);
  CHECK(effective_bid(inst, s, 0, 0) == 3);
  s.remaining[0] = 6;
  CHECK(effective_bid(inst, s, 0, 0) == 4);
  CHECK_THROWS_WITH_AS(effective_bid(inst, s, 0, 2), "keyword 0: no such bid",
                       ArbiterError);
}

TEST_CASE("zero bid has effective bid zero") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  inst.add_bidder("v", 3);
  inst.set_bid(0, 0, 0);
  CHECK(effective_bid(inst, initial_state(inst), 0, 0) == 0);
}

TEST_CASE("two-keyword replay charges 3 twice") {
  const Instance inst = two_keyword_example();
  Arbiter arb(inst);
  CHECK(arb.apply(Decision::assign(0, 1)) == 3);
  CHECK(arb.state().remaining[0] == 3);
  CHECK(arb.state().clock == 1);
  CHECK(arb.apply(Decision::assign(2, 0)) == 3);
  CHECK(arb.ledger().prices == std::vector<Money>{3, 3});
  CHECK(arb.ledger().total == 6);
  CHECK(arb.done());
  CHECK(second_price_upper_bound(inst) == 6);
}

TEST_CASE("skip leaves the state alone except the clock") {
  const Instance inst = two_keyword_example();
  const AuctionState s0 = initial_state(inst);
  const Applied a = apply_decision(inst, s0, Decision::skip());
  CHECK(a.price == 0);
  CHECK(a.state.remaining == s0.remaining);
  CHECK(a.state.matched == s0.matched);
  CHECK(a.state.clock == 1);
  CHECK(run_allocation(inst, {Decision::skip(), Decision::skip()}).total == 0);
}

TEST_CASE("assign without a second bidder is free") {
  const Instance inst = two_keyword_example();
  const Ledger l = run_allocation(inst, {Decision::assign(0), Decision::skip()});
  CHECK(l.total == 0);
}

TEST_CASE("arbiter errors") {
  const Instance inst = two_keyword_example();
  Arbiter arb(inst);
  CHECK_THROWS_WITH_AS(arb.apply(Decision::assign(1, 0)),
                       "keyword 0: first-price bidder outbid", ArbiterError);
  CHECK_THROWS_WITH_AS(arb.apply(Decision::assign(0, 0)),
                       "keyword 0: first and second-price bidder coincide",
                       ArbiterError);
  CHECK_THROWS_AS(arb.apply(Decision::assign(2, 0)), ArbiterError);
  CHECK(arb.state().clock == 0);  // failed decisions change nothing
  arb.apply(Decision::skip());
  arb.apply(Decision::skip());
  CHECK_THROWS_WITH_AS(arb.apply(Decision::skip()),
                       "no keyword left to allocate", ArbiterError);
  CHECK_THROWS_AS(run_allocation(inst, {Decision::skip()}), ArbiterError);
}

TEST_CASE("ties at equal effective bids are accepted in both orders") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  inst.add_bidder("a", 5);
  inst.add_bidder("b", 5);
  inst.set_bid(0, 0, 3);
  inst.set_bid(0, 1, 3);
  CHECK(run_allocation(inst, {Decision::assign(0, 1)}).total == 3);
  CHECK(run_allocation(inst, {Decision::assign(1, 0)}).total == 3);
}

TEST_CASE("2PM consumes the first-price bidder even at price zero") {
  Instance inst(Flavor::kMatching);
  inst.add_keyword("u1");
  inst.add_keyword("u2");
  inst.add_bidder("a", 1);
  inst.add_bidder("b", 1);
  for (int u = 0; u < 2; ++u) {
    inst.set_bid(u, 0, 1);
    inst.set_bid(u, 1, 1);
  }
  Arbiter arb(inst);
  CHECK(arb.apply(Decision::assign(0)) == 0);
  CHECK(arb.state().matched[0]);
  CHECK(arb.state().remaining[0] == 1);
  // b wins against the matched a, but a is worth nothing as runner-up.
  CHECK(arb.apply(Decision::assign(1, 0)) == 0);

  Arbiter again(inst);
  again.apply(Decision::assign(0));
  CHECK_THROWS_WITH_AS(again.apply(Decision::assign(0, 1)),
                       "keyword 1: first-price bidder already matched",
                       ArbiterError);
}

TEST_CASE("2PM single pair is worth one") {
  CHECK(run_allocation(pair_2pm(), {Decision::assign(0, 1)}).total == 1);
}

TEST_CASE("r_min is an exact rational") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  inst.add_bidder("a", 10);
  inst.add_bidder("b", 7);
  inst.set_bid(0, 0, 5);
  inst.set_bid(0, 1, 3);
  CHECK(r_min(inst) == Rational::make(2, 1));
  inst.set_bid(0, 1, 4);
  CHECK(r_min(inst) == Rational::make(7, 4));
  CHECK(r_min(pair_2pm()) == Rational::make(1, 1));

  Instance zero(Flavor::kAdAuction);
  zero.add_keyword("u");
  zero.add_bidder("a", 1);
  zero.set_bid(0, 0, 0);
  CHECK_THROWS_WITH_AS(r_min(zero), "R_min undefined: all bids are zero",
                       Error);
}

TEST_CASE("second-highest bids") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("two");
  inst.add_keyword("one");
  inst.add_keyword("tie");
  inst.add_bidder("a", 10);
  inst.add_bidder("b", 10);
  inst.set_bid(0, 0, 4);
  inst.set_bid(0, 1, 3);
  inst.set_bid(1, 0, 4);
  inst.set_bid(2, 0, 5);
  inst.set_bid(2, 1, 5);
  CHECK(second_highest_bid(inst, 0) == 3);
  CHECK(second_highest_bid(inst, 1) == 0);
  CHECK(second_highest_bid(inst, 2) == 5);
  CHECK(second_price_upper_bound(inst) == 8);
}

TEST_CASE("arbiter agrees with a direct replay on random decision sequences") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Random2paaOptions o;
    o.num_keywords = 5;
    o.num_bidders = 4;
    o.max_budget = 12;
    const Instance inst = gen_random_2paa(o, seed);
    Rng rng(seed + 1000);
    Allocation alloc;
    for (int u = 0; u < inst.num_keywords(); ++u) {
      const auto bids = inst.bids_on(u);
      if (bids.empty() || rng.below(4) == 0) {
        alloc.push_back(Decision::skip());
        continue;
      }
      const int a = bids[rng.below(bids.size())].bidder;
      const int b = bids[rng.below(bids.size())].bidder;
      alloc.push_back(a == b ? Decision::assign(a) : Decision::assign(a, b));
    }
    const auto expected = oracle::replay(inst, alloc);
    if (!expected) {
      CHECK_THROWS_AS(run_allocation(inst, alloc), ArbiterError);
      continue;
    }
    const Ledger l = run_allocation(inst, alloc);
    CHECK(l.prices == *expected);
    CHECK(l.total == oracle::total(*expected));
    CHECK(run_allocation(inst, alloc) == l);

    // Nobody pays more than its budget.
    std::vector<Money> paid(inst.num_bidders(), 0);
    for (int u = 0; u < inst.num_keywords(); ++u) {
      if (!alloc[u].is_skip()) paid[alloc[u].first] += l.prices[u];
    }
    for (int v = 0; v < inst.num_bidders(); ++v) {
      CHECK(paid[v] <= inst.bidder(v).budget);
    }
  }
}
