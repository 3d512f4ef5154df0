#include "gsp/generators.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "gsp/random.h"

namespace gsp {

namespace {

std::string str(int i) { return std::to_string(i); }

Money weight_sum(const std::vector<Money>& weights) {
  return std::accumulate(weights.begin(), weights.end(), Money{0});
}

void check_partition_input(const std::vector<Money>& weights, int c) {
  const auto n = static_cast<Money>(weights.size());
  if (n < 2 || n % 2 != 0) {
    throw Error("partition reduction needs an even number of items >= 2");
  }
  if (c < 1) throw Error("partition reduction needs c >= 1");
  for (Money w : weights) {
    if (w <= 0) throw Error("partition weights must be positive");
  }
  if ((c * weight_sum(weights)) % 2 != 0) {
    throw Error("partition reduction needs cW even");
  }
}

// Keyword and bidder indices of the partition construction.
struct PartitionLayout {
  int n, c;
  int item(int i) const { return i; }
  int e(int j) const { return n + j; }  // j in {0, 1}
  int g(int i, int k) const { return n + 2 + i * c + k; }
  static constexpr int a = 0, d1 = 1, d2 = 2, f = 3;
  int h(int i) const { return 4 + i; }
};

}  // namespace

Instance gen_partition_2paa(const std::vector<Money>& weights, int c) {
  check_partition_input(weights, c);
  const int n = static_cast<int>(weights.size());
  const Money W = weight_sum(weights);
  const Money nn = n;
  const Money n2 = nn * nn, n3 = n2 * nn;
  const PartitionLayout L{n, c};

  Instance inst(Flavor::kAdAuction);
  for (int i = 0; i < n; ++i) inst.add_keyword("c" + str(i + 1));
  inst.add_keyword("e1");
  inst.add_keyword("e2");
  for (int i = 0; i < n * n; ++i) {
    for (int k = 0; k < c; ++k) {
      inst.add_keyword("g" + str(i + 1) + "_" + str(k + 1));
    }
  }

  const Money side_budget = c * W * (1 + nn / 2);
  inst.add_bidder("a", side_budget);
  inst.add_bidder("d1", side_budget);
  inst.add_bidder("d2", side_budget);
  inst.add_bidder("f", c * W * (n3 + 1));
  for (int i = 0; i < n * n; ++i) inst.add_bidder("h" + str(i + 1), c * W * n3);

  for (int i = 0; i < n; ++i) {
    const Money b = c * (weights[i] + W);
    inst.set_bid(L.item(i), L.a, b);
    inst.set_bid(L.item(i), L.d1, b);
    inst.set_bid(L.item(i), L.d2, b);
  }
  inst.set_bid(L.e(0), L.d1, c * W);
  inst.set_bid(L.e(1), L.d2, c * W);
  inst.set_bid(L.e(0), L.f, c * W / 2);
  inst.set_bid(L.e(1), L.f, c * W / 2);
  for (int i = 0; i < n * n; ++i) {
    for (int k = 0; k < c; ++k) {
      inst.set_bid(L.g(i, k), L.f, W * (n3 + 1));
      inst.set_bid(L.g(i, k), L.h(i), W * n3);
    }
  }
  return inst;
}

Allocation replay_partition_witness(const std::vector<Money>& weights, int c,
                                    const std::vector<int>& subset) {
  check_partition_input(weights, c);
  const int n = static_cast<int>(weights.size());
  std::vector<bool> in_s(n, false);
  Money s_weight = 0;
  for (int i : subset) {
    if (i < 0 || i >= n || in_s[i]) {
      throw Error("partition witness: subset index invalid or repeated");
    }
    in_s[i] = true;
    s_weight += weights[i];
  }
  if (static_cast<int>(subset.size()) != n / 2 ||
      2 * s_weight != weight_sum(weights)) {
    throw Error("partition witness: subset is not a balanced partition");
  }

  const PartitionLayout L{n, c};
  Allocation alloc(n + 2 + n * n * c, Decision::skip());
  for (int i = 0; i < n; ++i) {
    alloc[L.item(i)] = Decision::assign(in_s[i] ? L.d1 : L.d2, L.a);
  }
  alloc[L.e(0)] = Decision::assign(L.f, L.d1);
  alloc[L.e(1)] = Decision::assign(L.f, L.d2);
  // f takes c-1 keywords of h_1's group at full price, which leaves its
  // budget at Wn^3; from then on it prices every remaining g keyword.
  for (int k = 0; k + 1 < c; ++k) alloc[L.g(0, k)] = Decision::assign(L.f, L.h(0));
  alloc[L.g(0, c - 1)] = Decision::assign(L.h(0), L.f);
  for (int i = 1; i < n * n; ++i) {
    for (int k = 0; k < c; ++k) alloc[L.g(i, k)] = Decision::assign(L.h(i), L.f);
  }
  return alloc;
}

Money partition_witness_value(const std::vector<Money>& weights, int c) {
  const Money n = static_cast<Money>(weights.size());
  return c * weight_sum(weights) * (n * n * n * n * n + n + 2);
}

PartitionThresholds partition_thresholds(int n, int c, double c_prime) {
  const double dn = n, dc = c;
  PartitionThresholds t;
  const double lhs = c_prime * dc * (std::pow(dn, 5) + dn + 2) /
                     (dc * dn * dn + dn + 2);
  const double rhs = dc * (std::pow(dn, 3) + dc * dn * dn + dn + 2);
  t.gap_condition = lhs >= rhs;
  t.budget_condition = (dn / 2 + 1) / 2 >= dc;
  return t;
}

void validate_formula(const SatFormula& formula) {
  if (formula.num_vars < 0) throw Error("negative variable count");
  for (const auto& clause : formula.clauses) {
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > formula.num_vars) {
        throw Error("literal " + str(lit) + " out of range");
      }
    }
  }
}

bool is_satisfiable(const SatFormula& formula) {
  validate_formula(formula);
  if (formula.num_vars > 30) throw Error("too many variables for brute force");
  const std::uint32_t limit = std::uint32_t{1} << formula.num_vars;
  for (std::uint32_t a = 0; a < limit; ++a) {
    bool all = true;
    for (const auto& clause : formula.clauses) {
      bool sat = false;
      for (int lit : clause) {
        const bool value = (a >> (std::abs(lit) - 1)) & 1U;
        sat |= lit > 0 ? value : !value;
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Instance gen_3sat_2pm(const SatFormula& formula) {
  validate_formula(formula);
  Instance inst(Flavor::kMatching);
  const int n = formula.num_vars;
  for (int i = 1; i <= n; ++i) {
    inst.add_bidder("v" + str(i) + "t", 1);
    inst.add_bidder("v" + str(i) + "f", 1);
  }
  auto true_bidder = [](int i) { return 2 * (i - 1); };
  auto false_bidder = [](int i) { return 2 * (i - 1) + 1; };
  for (int i = 1; i <= n; ++i) {
    const int u = inst.add_keyword("v" + str(i));
    inst.set_bid(u, true_bidder(i), 1);
    inst.set_bid(u, false_bidder(i), 1);
  }
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const int u = inst.add_keyword("u" + str(static_cast<int>(j) + 1));
    const int b = inst.add_bidder("b" + str(static_cast<int>(j) + 1), 1);
    inst.set_bid(u, b, 1);
    for (int lit : formula.clauses[j]) {
      const int i = std::abs(lit);
      inst.set_bid(u, lit > 0 ? false_bidder(i) : true_bidder(i), 1);
    }
  }
  return inst;
}

void validate_simple_graph(const SimpleGraph& graph) {
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : graph.edges) {
    if (a < 0 || b < 0 || a >= graph.num_vertices || b >= graph.num_vertices) {
      throw Error("edge endpoint out of range");
    }
    if (a == b) throw Error("self-loop in simple graph");
    if (!seen.insert(std::minmax(a, b)).second) {
      throw Error("duplicate edge in simple graph");
    }
  }
}

int min_vertex_cover(const SimpleGraph& graph) {
  validate_simple_graph(graph);
  if (graph.num_vertices > 30) throw Error("too many vertices for brute force");
  int best = graph.num_vertices;
  const std::uint32_t limit = std::uint32_t{1} << graph.num_vertices;
  for (std::uint32_t s = 0; s < limit; ++s) {
    const int size = std::popcount(s);
    if (size >= best) continue;
    bool covers = true;
    for (auto [a, b] : graph.edges) {
      if (!((s >> a) & 1U) && !((s >> b) & 1U)) {
        covers = false;
        break;
      }
    }
    if (covers) best = size;
  }
  return best;
}

VcReduction gen_vc_2pm(const SimpleGraph& graph) {
  validate_simple_graph(graph);
  VcReduction r;
  Instance& inst = r.instance;
  inst.set_flavor(Flavor::kMatching);
  const int n = graph.num_vertices;
  for (int v = 0; v < n; ++v) r.vertex_bidder.push_back(inst.add_bidder("v" + str(v), 1));
  for (int v = 0; v < n; ++v) {
    r.y.push_back(inst.add_bidder("y" + str(v), 1));
    r.z.push_back(inst.add_bidder("z" + str(v), 1));
  }
  for (auto [a, b] : graph.edges) {
    r.edge_bidder.push_back(inst.add_bidder("x" + str(a) + "_" + str(b), 1));
  }
  for (int v = 0; v < n; ++v) {
    r.h.push_back(inst.add_keyword("h" + str(v)));
    inst.set_bid(r.h.back(), r.vertex_bidder[v], 1);
    inst.set_bid(r.h.back(), r.y[v], 1);
    r.l.push_back(inst.add_keyword("l" + str(v)));
    inst.set_bid(r.l.back(), r.y[v], 1);
    inst.set_bid(r.l.back(), r.z[v], 1);
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    auto [a, b] = graph.edges[i];
    const int u = inst.add_keyword("e" + str(a) + "_" + str(b));
    r.edge_keyword.push_back(u);
    inst.set_bid(u, r.vertex_bidder[a], 1);
    inst.set_bid(u, r.vertex_bidder[b], 1);
    inst.set_bid(u, r.edge_bidder[i], 1);
  }
  return r;
}

Allocation vc_witness(const VcReduction& r, const SimpleGraph& graph,
                      const std::vector<bool>& cover) {
  const int n = graph.num_vertices;
  if (static_cast<int>(cover.size()) != n) throw Error("cover has wrong size");
  Allocation alloc(r.instance.num_keywords(), Decision::skip());
  for (int v = 0; v < n; ++v) {
    if (cover[v]) {
      alloc[r.h[v]] = Decision::assign(r.y[v], r.vertex_bidder[v]);
    } else {
      alloc[r.h[v]] = Decision::assign(r.vertex_bidder[v], r.y[v]);
      alloc[r.l[v]] = Decision::assign(r.y[v], r.z[v]);
    }
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    auto [a, b] = graph.edges[i];
    if (!cover[a] && !cover[b]) throw Error("not a vertex cover");
    const int free_end = cover[a] ? a : b;
    alloc[r.edge_keyword[i]] =
        Decision::assign(r.edge_bidder[i], r.vertex_bidder[free_end]);
  }
  return alloc;
}

AuctionState ChainInstance::start() const {
  AuctionState s = initial_state(instance);
  for (int v : unavailable) s.matched.at(v) = true;
  return s;
}

namespace {

// Bidder pair of every chain keyword, lower index first.
std::vector<std::array<int, 2>> chain_pairs(int m,
                                            const std::vector<bool>& bits) {
  if (m < 1) throw Error("chain instance needs m >= 1");
  if (static_cast<int>(bits.size()) != m - 1) {
    throw Error("chain instance needs m - 1 choice bits");
  }
  std::vector<std::array<int, 2>> pairs{{0, 1}};
  for (int t = 1; t < m; ++t) {
    const int shared = pairs[t - 1][bits[t - 1] ? 1 : 0];
    pairs.push_back({shared, t + 1});
  }
  return pairs;
}

}  // namespace

ChainInstance gen_chain_instance(int m, const std::vector<bool>& bits,
                                 bool restricted) {
  const auto pairs = chain_pairs(m, bits);
  ChainInstance out;
  Instance& inst = out.instance;
  inst.set_flavor(Flavor::kMatching);
  for (int v = 0; v <= m; ++v) inst.add_bidder("b" + str(v), 1);
  for (int t = 0; t < m; ++t) {
    const int u = inst.add_keyword("k" + str(t + 1));
    inst.set_bid(u, pairs[t][0], 1);
    inst.set_bid(u, pairs[t][1], 1);
  }
  if (restricted) out.unavailable.push_back(0);
  return out;
}

Allocation chain_witness(int m, const std::vector<bool>& bits) {
  const auto pairs = chain_pairs(m, bits);
  Allocation alloc;
  for (int t = 0; t < m; ++t) {
    // Keep the bidder the next keyword shares free to price it.
    const int keep = t + 1 < m ? (bits[t] ? 1 : 0) : 1;
    alloc.push_back(Decision::assign(pairs[t][1 - keep], pairs[t][keep]));
  }
  return alloc;
}

AdversaryTranscript deterministic_adversary(int m, OnlineAlgorithm& alg,
                                            std::uint64_t seed) {
  if (m < 1) throw Error("adversary needs m >= 1");
  AdversaryTranscript tr;
  Instance& inst = tr.instance;
  inst.set_flavor(Flavor::kMatching);
  alg.init(2 * m, std::vector<bool>(2 * m, false), seed);

  int hub = kNone;
  std::vector<std::array<int, 2>> pairs;
  Allocation decisions;
  for (int i = 0; i < m; ++i) {
    const int u = inst.add_keyword("k" + str(i + 1));
    std::array<int, 2> pair{};
    if (hub == kNone) {
      pair[0] = inst.add_bidder("a" + str(i + 1), 1);
      pair[1] = inst.add_bidder("b" + str(i + 1), 1);
    } else {
      pair[0] = hub;
      pair[1] = inst.add_bidder("c" + str(i + 1), 1);
    }
    inst.set_bid(u, pair[0], 1);
    inst.set_bid(u, pair[1], 1);
    pairs.push_back(pair);

    Decision d = alg.on_arrival(u, inst.bids_on(u));
    decisions.push_back(d);
    if (hub == kNone && !d.is_skip()) {
      hub = d.first;
      tr.matched_at = i;
    }
  }
  tr.algorithm.allocation = decisions;
  tr.algorithm.ledger = run_allocation(inst, decisions);

  for (int i = 0; i < m; ++i) {
    const auto& p = pairs[i];
    if (tr.matched_at == kNone || i < tr.matched_at) {
      tr.witness.push_back(Decision::assign(p[0], p[1]));
    } else if (i == tr.matched_at) {
      const int other = p[0] == hub ? p[1] : p[0];
      tr.witness.push_back(Decision::assign(other, hub));
    } else {
      tr.witness.push_back(Decision::assign(p[1], hub));
    }
  }
  tr.witness_ledger = run_allocation(inst, tr.witness);
  return tr;
}

std::pair<BipartiteGraph, LeftCopyMap> left_k_copy(const BipartiteGraph& graph,
                                                   int k) {
  if (k < 1) throw Error("left k-copy needs k >= 1");
  BipartiteGraph h(graph.num_left * k, graph.num_right);
  LeftCopyMap map;
  map.k = k;
  for (int u = 0; u < graph.num_left; ++u) {
    for (int j = 0; j < k; ++j) {
      h.adj[u * k + j] = graph.adj[u];
      map.zeta.push_back(u);
    }
  }
  return {std::move(h), std::move(map)};
}

Instance left_k_copy(const Instance& inst, int k) {
  if (k < 1) throw Error("left k-copy needs k >= 1");
  Instance out(inst.flavor());
  for (const auto& b : inst.bidders()) out.add_bidder(b.id, b.budget);
  for (int u = 0; u < inst.num_keywords(); ++u) {
    for (int j = 0; j < k; ++j) {
      const int w = out.add_keyword(inst.keyword_id(u) + "#" + str(j + 1));
      for (const auto& e : inst.bids_on(u)) out.set_bid(w, e.bidder, e.amount);
    }
  }
  return out;
}

bool is_left_k_copy(const BipartiteGraph& source, const BipartiteGraph& copy,
                    const LeftCopyMap& map) {
  if (copy.num_right != source.num_right) return false;
  if (copy.num_left != map.k * source.num_left) return false;
  if (static_cast<int>(map.zeta.size()) != copy.num_left) return false;
  std::vector<int> fiber(source.num_left, 0);
  for (int w = 0; w < copy.num_left; ++w) {
    const int u = map.zeta[w];
    if (u < 0 || u >= source.num_left) return false;
    ++fiber[u];
    if (copy.adj[w] != source.adj[u]) return false;
  }
  return std::all_of(fiber.begin(), fiber.end(),
                     [&](int c) { return c == map.k; });
}

BipartiteGraph random_bipartite_graph(const RandomGraphOptions& o,
                                      std::uint64_t seed) {
  if (!(o.edge_prob > 0.0 && o.edge_prob <= 1.0)) {
    throw Error("edge probability must lie in (0, 1]");
  }
  if (o.num_keywords < 0 || o.num_bidders < 0) throw Error("negative size");
  if (o.require_min_degree_2 && o.num_keywords > 0 && o.num_bidders < 2) {
    throw Error("degree 2 needs at least two bidders");
  }
  if (o.planted_matching && o.num_keywords > o.num_bidders) {
    throw Error("planted matching needs num_keywords <= num_bidders");
  }
  Rng rng(seed);
  std::vector<int> planted(o.num_bidders);
  std::iota(planted.begin(), planted.end(), 0);
  if (o.planted_matching) shuffle(planted, rng);

  BipartiteGraph g(o.num_keywords, o.num_bidders);
  for (int u = 0; u < o.num_keywords; ++u) {
    do {
      g.adj[u].clear();
      for (int v = 0; v < o.num_bidders; ++v) {
        if (rng.chance(o.edge_prob)) g.adj[u].push_back(v);
      }
      if (o.planted_matching) g.add_edge(u, planted[u]);
    } while (o.require_min_degree_2 && g.adj[u].size() < 2);
  }
  return g;
}

Instance gen_random_2pm(const RandomGraphOptions& options, std::uint64_t seed) {
  RandomGraphOptions o = options;
  return to_matching_instance(random_bipartite_graph(o, seed));
}

Instance gen_random_2paa(const Random2paaOptions& o, std::uint64_t seed) {
  if (o.c < 1) throw Error("c must be positive");
  if (o.max_budget < o.c) throw Error("max_budget must be at least c");
  Rng rng(seed);
  Instance inst(Flavor::kAdAuction);
  for (int v = 0; v < o.num_bidders; ++v) {
    inst.add_bidder("v" + str(v), rng.between(o.c, o.max_budget));
  }
  for (int u = 0; u < o.num_keywords; ++u) {
    const int k = inst.add_keyword("u" + str(u));
    for (int v = 0; v < o.num_bidders; ++v) {
      if (!rng.chance(o.bid_prob)) continue;
      inst.set_bid(k, v, rng.between(1, inst.bidder(v).budget / o.c));
    }
  }
  return inst;
}

}  // namespace gsp
