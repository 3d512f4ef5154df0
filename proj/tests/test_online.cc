#include <set>

#include "doctest.h"
#include "gsp/generators.h"
#include "gsp/graph.h"
#include "gsp/online.h"
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

std::vector<bool> bits_of(unsigned mask, int n) {
  std::vector<bool> b(n);
  for (int i = 0; i < n; ++i) b[i] = mask >> i & 1;
  return b;
}

}  // namespace

TEST_CASE("greedy assigns only with a free runner-up") {
  const Instance one = matching_from(1, 2, {{0, 1}});
  const SolveResult r = greedy_2pm(one);
  CHECK(r.allocation[0] == Decision::assign(0, 1));
  CHECK(r.ledger.total == 1);

  // Second keyword sees only one unmatched neighbor.
  const Instance two = matching_from(2, 3, {{0, 1}, {0, 2}});
  const SolveResult s = greedy_2pm(two);
  CHECK(s.allocation[0] == Decision::assign(0, 1));
  CHECK(s.allocation[1].is_skip());
  CHECK(s.ledger.total == 1);
}

TEST_CASE("every greedy assignment is paid") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomGraphOptions o;
    o.num_keywords = 8;
    o.num_bidders = 6;
    o.edge_prob = 0.35;
    const Instance inst = gen_random_2pm(o, seed);
    for (auto tie : {TieBreak::kLowestIndex, TieBreak::kRandom}) {
      const SolveResult r = greedy_2pm(inst, tie, seed);
      for (int u = 0; u < inst.num_keywords(); ++u) {
        if (!r.allocation[u].is_skip()) CHECK(r.ledger.prices[u] == 1);
      }
    }
  }
}

TEST_CASE("greedy on chains averages (m + 1) / 2 exactly") {
  // Exact expectation over all 2^(m-1) equally likely chains.
  for (int m = 1; m <= 10; ++m) {
    Money sum = 0, restricted = 0;
    const unsigned count = 1u << (m - 1);
    for (unsigned mask = 0; mask < count; ++mask) {
      const auto bits = bits_of(mask, m - 1);
      sum += greedy_2pm(gen_chain_instance(m, bits).instance).ledger.total;
      const ChainInstance rc = gen_chain_instance(m, bits, true);
      GreedyAlgorithm g;
      restricted += run_online(rc.instance, g, 0, rc.start()).ledger.total;
    }
    CHECK(2 * sum == static_cast<Money>(m + 1) * count);
    CHECK(2 * restricted == static_cast<Money>(m - 1) * count);
  }
}

TEST_CASE("trivial policy takes only the first keyword") {
  const Instance inst = matching_from(3, 4, {{1, 2}, {0, 3}, {2, 3}});
  const SolveResult r = trivial_first(inst);
  CHECK(r.allocation[0] == Decision::assign(1, 2));
  CHECK(r.allocation[1].is_skip());
  CHECK(r.allocation[2].is_skip());
  CHECK(r.ledger.total == 1);
  CHECK(trivial_first(Instance(Flavor::kMatching)).ledger.total == 0);
}

TEST_CASE("graph-level ranking examples") {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  const Matching m = ranking(g, identity_order(2), Ranking::identity(2));
  CHECK(m.size() == 1);
  CHECK(m.bidder_of(0) == 0);
  CHECK(!m.keyword_matched(1));

  BipartiteGraph perfect(3, 3);
  for (int i = 0; i < 3; ++i) perfect.add_edge(i, i);
  CHECK(ranking(perfect, identity_order(3), Ranking::identity(3)).size() == 3);

  BipartiteGraph empty(0, 0);
  CHECK(ranking_prime(empty, identity_order(0), Ranking::identity(0)).size() ==
        0);
}

TEST_CASE("ranking matches the reference and its dual") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    RandomGraphOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, 9));
    o.num_bidders = static_cast<int>(rng.between(1, 9));
    o.edge_prob = 0.4;
    o.require_min_degree_2 = false;
    const BipartiteGraph g = random_bipartite_graph(o, seed);
    const auto pi = make_permutation(seed + 1, o.num_keywords).order;
    const Ranking sigma = make_permutation(seed + 2, o.num_bidders);
    const auto edges = ranking(g, pi, sigma).edges();
    CHECK(edges == oracle::ranking(g, pi, sigma.rank));
    CHECK(edges == ranking_prime(g, pi, sigma).edges());
  }
}

TEST_CASE("ranking simulate single-neighbor branch") {
  // u0: {a, b}, u1: {a, c}, u2: {b, c}. sigma = identity.
  const Instance inst = matching_from(3, 3, {{0, 1}, {0, 2}, {1, 2}});
  const Ranking id = Ranking::identity(3);

  // Heads at u0 matches a and reserves b. u1 then has only c open; heads
  // matches c, and with a matched nobody can price it.
  SimulateResult r = ranking_simulate(inst, id, CoinStream({true, true}));
  CHECK(r.allocation[0] == Decision::assign(0, 1));
  CHECK(r.allocation[1] == Decision::assign(2));
  CHECK(r.allocation[2].is_skip());  // N(u2) is empty
  CHECK(r.state.coins_used == 2);
  CHECK(r.ledger.total == 1);

  // Tails at u1 reserves c instead.
  r = ranking_simulate(inst, id, CoinStream({true, false}));
  CHECK(r.allocation[1].is_skip());
  CHECK(r.state.reserved[2]);
  CHECK(!r.state.matched[2]);

  // Tails at u0 matches b and reserves a, which can still price u0.
  r = ranking_simulate(inst, id, CoinStream({false, true}));
  CHECK(r.allocation[0] == Decision::assign(1, 0));
  CHECK(r.ledger.prices[0] == 1);
}

TEST_CASE("ranking simulate consumes one coin per nonempty neighborhood") {
  const Instance inst = matching_from(2, 2, {{0, 1}, {0, 1}});
  // u0 uses one coin; both bidders are then in M or R, so u1 uses none.
  const SimulateResult r =
      ranking_simulate(inst, Ranking::identity(2), CoinStream({true}));
  CHECK(r.state.coins_used == 1);
  CHECK_THROWS_WITH_AS(
      ranking_simulate(inst, Ranking::identity(2), CoinStream(std::vector<bool>{})),
      "coin stream exhausted", Error);
}

TEST_CASE("ranking simulate covers exactly the 2-copy ranking's bidders") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomGraphOptions o;
    o.num_keywords = 6;
    o.num_bidders = 6;
    o.edge_prob = 0.4;
    const Instance inst = gen_random_2pm(o, seed);
    const Ranking sigma = make_permutation(seed, 6);
    const BipartiteGraph h = left_k_copy(to_graph(inst), 2).first;
    const Matching x = ranking(h, identity_order(h.num_left), sigma);
    for (std::uint64_t c = 0; c < 20; ++c) {
      const SimulateResult r = ranking_simulate(inst, sigma, CoinStream(c));
      for (int v = 0; v < 6; ++v) {
        CHECK(!(r.state.matched[v] && r.state.reserved[v]));
        CHECK((r.state.matched[v] || r.state.reserved[v]) ==
              x.bidder_matched(v));
      }
    }
  }
}

TEST_CASE("coupling holds on every coin stream of a small instance") {
  // Enumerate all coin streams, not just sampled ones: E[matched] = X_v / 2.
  RandomGraphOptions o;
  o.num_keywords = 4;
  o.num_bidders = 4;
  o.edge_prob = 0.5;
  const Instance inst = gen_random_2pm(o, 7);
  const Ranking sigma = make_permutation(3, 4);
  const BipartiteGraph h = left_k_copy(to_graph(inst), 2).first;
  const Matching x = ranking(h, identity_order(h.num_left), sigma);
  const int coins = inst.num_keywords();  // at most one per keyword
  std::vector<int> matched(4, 0);
  std::set<std::vector<bool>> seen;
  for (unsigned mask = 0; mask < (1u << coins); ++mask) {
    const auto stream = bits_of(mask, coins);
    const SimulateResult r = ranking_simulate(inst, sigma, CoinStream(stream));
    // Streams that differ only in unused coins give the same run.
    std::vector<bool> used(stream.begin(), stream.begin() + r.state.coins_used);
    if (!seen.insert(used).second) continue;
    const int weight = 1 << (coins - static_cast<int>(r.state.coins_used));
    for (int v = 0; v < 4; ++v) {
      if (r.state.matched[v]) matched[v] += weight;
    }
  }
  for (int v = 0; v < 4; ++v) {
    CHECK(2 * matched[v] == (x.bidder_matched(v) ? (1 << coins) : 0));
  }
}

TEST_CASE("run_online drives a policy through the arbiter") {
  const Instance inst = matching_from(2, 3, {{0, 1}, {1, 2}});
  auto alg = make_online_algorithm("greedy");
  const SolveResult r = run_online(inst, *alg, 0);
  CHECK(r.ledger == run_allocation(inst, r.allocation));
  CHECK(r.ledger.total == 2);
  CHECK_THROWS_WITH_AS(make_online_algorithm("nope"),
                       "unknown online algorithm 'nope'", Error);
}

TEST_CASE("online policies are deterministic given the seed") {
  RandomGraphOptions o;
  o.num_keywords = 30;
  o.num_bidders = 30;
  o.edge_prob = 0.1;
  const Instance inst = gen_random_2pm(o, 5);
  for (const char* name : {"greedy-random", "ranking", "ranking-sim"}) {
    auto a = make_online_algorithm(name);
    auto b = make_online_algorithm(name);
    CHECK(run_online(inst, *a, 42).allocation ==
          run_online(inst, *b, 42).allocation);
  }
}
