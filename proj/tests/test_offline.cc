#include "doctest.h"
#include "gsp/generators.h"
#include "gsp/graph.h"
#include "gsp/offline.h"
#include "gsp/random.h"
#include "oracles.h"

using namespace gsp;

namespace {

Instance matching_from(int left, int right,
                       const std::vector<std::vector<int>>& adj) {
  BipartiteGraph g(left, right);
  for (int u = 0; u < left; ++u) {
    for (int v : adj[u]) g.add_edge(u, v);
  }
  return to_matching_instance(g);
}

}  // namespace

TEST_CASE("Hopcroft-Karp matches the exhaustive maximum") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    RandomGraphOptions o;
    o.num_keywords = static_cast<int>(rng.between(0, 7));
    o.num_bidders = static_cast<int>(rng.between(1, 7));
    o.edge_prob = 0.1 * static_cast<double>(rng.between(1, 9));
    o.require_min_degree_2 = false;
    const BipartiteGraph g = random_bipartite_graph(o, seed);
    const Matching m = maximum_bipartite_matching(g);
    CHECK(is_valid_matching(g, m));
    CHECK(m.size() == oracle::max_matching(g));
    CHECK(maximum_bipartite_matching(g) == m);
  }
}

TEST_CASE("edge classification") {
  // u0 - a, u1 - b; edge (u1, a) is up, (u0, b) is down.
  BipartiteGraph g(2, 3);
  g.add_edge(0, 0);
  g.add_edge(1, 1);
  Matching f(2, 3);
  f.match(0, 0);
  f.match(1, 1);
  CHECK(classify_edge(f, 1, 0) == EdgeClass::kUp);
  CHECK(classify_edge(f, 0, 1) == EdgeClass::kDown);
  CHECK(classify_edge(f, 0, 2) == EdgeClass::kDown);  // unmatched bidder
}

TEST_CASE("reverse match on a single keyword") {
  const Instance inst = matching_from(1, 2, {{0, 1}});
  const auto r = reverse_match(inst);
  CHECK(r.matching_size == 1);
  CHECK(r.allocation[0] == Decision::assign(0, 1));
  CHECK(r.ledger.total == 1);
}

TEST_CASE("reverse match breaks an up-edge and drops the earlier keyword") {
  // Both keywords adjacent to exactly {a, b}.
  const Instance inst = matching_from(2, 2, {{0, 1}, {0, 1}});
  const auto r = reverse_match(inst);
  CHECK(r.matching_size == 2);
  CHECK(r.allocation[0].is_skip());
  CHECK(r.allocation[1] == Decision::assign(1, 0));
  CHECK(r.ledger.total == 1);
  CHECK(brute_force_2pm_opt(inst).ledger.total == 1);
}

TEST_CASE("reverse match keeps half of the matching and half of OPT") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    RandomGraphOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, 6));
    o.num_bidders = static_cast<int>(rng.between(2, 6));
    o.edge_prob = 0.4;
    const Instance inst = gen_random_2pm(o, seed);
    const auto r = reverse_match(inst);
    const Money opt = oracle::best_second_price(inst);
    CHECK(2 * r.ledger.total >= r.matching_size);
    CHECK(2 * r.ledger.total >= opt);
    CHECK(opt <= r.matching_size);
    for (int u = 0; u < inst.num_keywords(); ++u) {
      if (!r.allocation[u].is_skip()) CHECK(r.ledger.prices[u] == 1);
    }
  }
}

TEST_CASE("2PM dynamic program matches exhaustive decision search") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    RandomGraphOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, 5));
    o.num_bidders = static_cast<int>(rng.between(2, 5));
    o.edge_prob = 0.5;
    const Instance inst = gen_random_2pm(o, seed);
    const SolveResult r = brute_force_2pm_opt(inst);
    CHECK(r.ledger.total == oracle::best_second_price(inst));
    CHECK(run_allocation(inst, r.allocation) == r.ledger);
    CHECK(r.ledger.total <= maximum_bipartite_matching(inst).size());
  }
}

TEST_CASE("2PM dynamic program from a partial state") {
  // u0: {a, b}, u1: {b, c}. With b taken, neither keyword has a free
  // runner-up.
  const Instance inst = matching_from(2, 3, {{0, 1}, {1, 2}});
  AuctionState start = initial_state(inst);
  CHECK(brute_force_2pm_opt(inst, start).ledger.total == 2);
  start.matched[1] = true;
  CHECK(brute_force_2pm_opt(inst, start).ledger.total == 0);
}

TEST_CASE("small 2PM cases") {
  CHECK(brute_force_2pm_opt(matching_from(1, 2, {{0, 1}})).ledger.total == 1);
  SimpleGraph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
  CHECK(brute_force_2pm_opt(gen_vc_2pm(triangle).instance).ledger.total == 7);
  const auto chain = gen_chain_instance(3, {false, true});
  CHECK(brute_force_2pm_opt(chain.instance).ledger.total == 3);
}

TEST_CASE("2PAA exhaustive optimum matches exhaustive decision search") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    Random2paaOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, 4));
    o.num_bidders = static_cast<int>(rng.between(1, 4));
    o.max_budget = 9;
    const Instance inst = gen_random_2paa(o, seed);
    const SolveResult r = brute_force_2paa_opt(inst);
    CHECK(r.ledger.total == oracle::best_second_price(inst));
    CHECK(run_allocation(inst, r.allocation) == r.ledger);
    CHECK(r.ledger.total <= second_price_upper_bound(inst));
  }
}

TEST_CASE("first-price optimum matches enumeration") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Random2paaOptions o;
    o.num_keywords = 4;
    o.num_bidders = 3;
    const Instance inst = gen_random_2paa(o, seed);
    const FirstPriceResult r = brute_force_1paa_opt(inst);
    CHECK(r.value == oracle::best_first_price(inst));
    CHECK(first_price_value(inst, r.allocation) == r.value);
    CHECK(oracle::first_price_value(inst, r.allocation.assignment) == r.value);
  }
}

TEST_CASE("oracles refuse oversized input") {
  Random2paaOptions o;
  o.num_keywords = 7;
  o.num_bidders = 3;
  CHECK_THROWS_AS(brute_force_2paa_opt(gen_random_2paa(o, 1)), Error);
  CHECK_THROWS_AS(brute_force_1paa_opt(gen_random_2paa(o, 1)), Error);
}

namespace {

// Keywords with second-highest bids 5, 3, 2 (budgets large enough for c=2).
Instance three_keywords() {
  Instance inst(Flavor::kAdAuction);
  inst.add_bidder("a", 20);
  inst.add_bidder("b", 20);
  const Money second[] = {5, 3, 2};
  for (int u = 0; u < 3; ++u) {
    inst.add_keyword("u" + std::to_string(u));
    inst.set_bid(u, 0, second[u] + 1);
    inst.set_bid(u, 1, second[u]);
  }
  return inst;
}

}  // namespace

TEST_CASE("top-c takes the largest second-highest bids") {
  const Instance inst = three_keywords();
  CHECK(top_c_allocate(inst, 1).ledger.total == 5);
  const SolveResult two = top_c_allocate(inst, 2);
  CHECK(two.ledger.total == 8);
  CHECK(3 * two.ledger.total >= 2 * second_price_upper_bound(inst));
  CHECK(two.allocation[2].is_skip());
}

TEST_CASE("top-c on the PARTITION construction") {
  const Instance inst = gen_partition_2paa({1, 1, 1, 1}, 1);
  CHECK(top_c_allocate(inst, 1).ledger.total == 256);
}

TEST_CASE("top-c rejects a violated R_min precondition") {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("u");
  inst.add_bidder("a", 5);
  inst.add_bidder("b", 5);
  inst.set_bid(0, 0, 5);
  inst.set_bid(0, 1, 4);
  CHECK_THROWS_WITH_AS(top_c_allocate(inst, 2),
                       "precondition R_min >= c violated", Error);
}

TEST_CASE("top-c guarantee on random instances with m >= c") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    Random2paaOptions o;
    o.c = static_cast<int>(rng.between(1, 4));
    o.num_keywords = static_cast<int>(rng.between(o.c, 8));
    o.num_bidders = static_cast<int>(rng.between(2, 5));
    o.max_budget = 30;
    const Instance inst = gen_random_2paa(o, seed);
    const SolveResult r = top_c_allocate(inst, o.c);
    CHECK(r.ledger.total * inst.num_keywords() >=
          o.c * second_price_upper_bound(inst));
  }
}
