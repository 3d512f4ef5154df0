// Instance generators: the hardness reductions (PARTITION -> 2PAA(c),
// 3-SAT -> 2PM, Vertex Cover -> 2PM) with their certificate constructions,
// the online lower-bound families, left k-copies, and random corpora.

#ifndef GSP_GENERATORS_H_
#define GSP_GENERATORS_H_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gsp/graph.h"
#include "gsp/model.h"
#include "gsp/online.h"

namespace gsp {

// ---------------------------------------------------------------------------
// PARTITION -> 2PAA(c)
//
// Keywords c_1..c_n, e_1, e_2, then g_{i,k} (1 <= i <= n^2, 1 <= k <= c) in
// that order. Bidders a, d_1, d_2, f, h_1..h_{n^2}. With W = sum of weights:
//   budgets   a, d_1, d_2: cW(1 + n/2);  f: cW(n^3 + 1);  h_i: cWn^3
//   c_i:      a, d_1, d_2 bid c(w_i + W)
//   e_j:      d_j bids cW, f bids cW/2
//   g_{i,k}:  f bids W(n^3 + 1), h_i bids Wn^3
// Requires n even, n >= 2, positive weights and cW even.

Instance gen_partition_2paa(const std::vector<Money>& weights, int c);

// The certificate allocation for a balanced partition `subset` (0-based item
// indices, |subset| = n/2, weight W/2). Its value is cW(n^5 + n + 2).
Allocation replay_partition_witness(const std::vector<Money>& weights, int c,
                                    const std::vector<int>& subset);

// cW(n^5 + n + 2).
Money partition_witness_value(const std::vector<Money>& weights, int c);

// The two size conditions that make the hardness argument go through for a
// given c' > c. Purely advisory; the generator does not require them.
struct PartitionThresholds {
  bool gap_condition = false;     // c'c(n^5+n+2)/(cn^2+n+2) >= c(n^3+cn^2+n+2)
  bool budget_condition = false;  // (n/2 + 1)/2 >= c
};
PartitionThresholds partition_thresholds(int n, int c, double c_prime);

// ---------------------------------------------------------------------------
// 3-SAT -> 2PM

// Literals are DIMACS-style: +i is x_i, -i is not x_i, 1 <= i <= num_vars.
struct SatFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

void validate_formula(const SatFormula& formula);
bool is_satisfiable(const SatFormula& formula);

// Variable keywords v_i (bidders v_i^t, v_i^f) arrive first, then clause
// keywords u_j (bidder b_j plus, per literal, v_i^f for x_i and v_i^t for
// not x_i). Bidder order: v_1^t, v_1^f, ..., v_n^t, v_n^f, b_1..b_k.
Instance gen_3sat_2pm(const SatFormula& formula);

// ---------------------------------------------------------------------------
// Vertex Cover -> 2PM

struct SimpleGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

void validate_simple_graph(const SimpleGraph& graph);

// Size of a minimum vertex cover by subset enumeration (<= 30 vertices).
int min_vertex_cover(const SimpleGraph& graph);

struct VcReduction {
  Instance instance;
  // Keyword indices.
  std::vector<int> h, l, edge_keyword;
  // Bidder indices.
  std::vector<int> vertex_bidder, y, z, edge_bidder;
};

// Per vertex v (in index order) keywords h_v then l_v; after all gadgets the
// edge keywords in edge-list order. h_v: {v, y_v}; l_v: {y_v, z_v};
// edge e = {a, b}: {a, b, x_e}.
VcReduction gen_vc_2pm(const SimpleGraph& graph);

// The certificate allocation for vertex cover `cover` with value
// 2|V| + |E| - |cover|.
Allocation vc_witness(const VcReduction& reduction, const SimpleGraph& graph,
                      const std::vector<bool>& cover);

// ---------------------------------------------------------------------------
// Online lower-bound families

struct ChainInstance {
  Instance instance;
  // Bidders matched before the first arrival (restricted variant only).
  std::vector<int> unavailable;

  AuctionState start() const;
};

// Keyword 1 is adjacent to bidders 0 and 1. Keyword t+1 is adjacent to one of
// keyword t's two bidders, chosen by bits[t-1] (false: the lower-index one),
// and to a fresh bidder. Requires m >= 1 and bits.size() == m - 1. The
// restricted variant marks bidder 0 unavailable.
ChainInstance gen_chain_instance(int m, const std::vector<bool>& bits,
                                 bool restricted = false);

// Offline optimum certificate for a normal chain: each keyword goes to the
// bidder the next keyword does not use.
Allocation chain_witness(int m, const std::vector<bool>& bits);

struct AdversaryTranscript {
  Instance instance;  // the realized game as a static instance
  SolveResult algorithm;
  Allocation witness;
  Ledger witness_ledger;
  int matched_at = kNone;  // first keyword the algorithm assigned, if any
};

// Referee for the deterministic lower bound. Shows fresh bidder pairs until
// the algorithm assigns some keyword k, then routes every later keyword
// through the bidder it assigned plus a fresh bidder.
AdversaryTranscript deterministic_adversary(int m, OnlineAlgorithm& alg,
                                            std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Left k-copies

struct LeftCopyMap {
  std::vector<int> zeta;  // copied keyword -> source keyword
  int k = 1;
};

// Copies of each keyword are consecutive, in source arrival order: copy j of
// source keyword u is keyword u*k + j.
std::pair<BipartiteGraph, LeftCopyMap> left_k_copy(const BipartiteGraph& graph,
                                                   int k);
Instance left_k_copy(const Instance& inst, int k);

// Both bullets of the left k-copy definition.
bool is_left_k_copy(const BipartiteGraph& source, const BipartiteGraph& copy,
                    const LeftCopyMap& map);

// ---------------------------------------------------------------------------
// Random families

struct RandomGraphOptions {
  int num_keywords = 0;
  int num_bidders = 0;
  double edge_prob = 0.5;
  bool require_min_degree_2 = true;
  bool planted_matching = false;  // needs num_keywords <= num_bidders
};

BipartiteGraph random_bipartite_graph(const RandomGraphOptions& options,
                                      std::uint64_t seed);
Instance gen_random_2pm(const RandomGraphOptions& options, std::uint64_t seed);

// Random 2PAA instance with R_min >= c: every bid is at most floor(B_v / c).
struct Random2paaOptions {
  int num_keywords = 4;
  int num_bidders = 4;
  Money max_budget = 10;
  double bid_prob = 0.6;
  int c = 1;
};
Instance gen_random_2paa(const Random2paaOptions& options, std::uint64_t seed);

}  // namespace gsp

#endif  // GSP_GENERATORS_H_
