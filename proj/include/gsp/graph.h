// Bipartite keyword/bidder graphs and maximum-cardinality matching.

#ifndef GSP_GRAPH_H_
#define GSP_GRAPH_H_

#include <utility>
#include <vector>

#include "gsp/model.h"

namespace gsp {

// Left vertices are keywords (index == arrival position unless an explicit
// arrival order is supplied), right vertices are bidders. Adjacency lists
// are kept sorted.
struct BipartiteGraph {
  int num_left = 0;
  int num_right = 0;
  std::vector<std::vector<int>> adj;

  BipartiteGraph() = default;
  BipartiteGraph(int left, int right) : num_left(left), num_right(right),
                                        adj(left) {}

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int num_edges() const;
  // Bidder-side adjacency, sorted.
  std::vector<std::vector<int>> right_adjacency() const;

  friend bool operator==(const BipartiteGraph&,
                         const BipartiteGraph&) = default;
};

// Keyword/bidder graph of the positive bids of `inst`.
BipartiteGraph to_graph(const Instance& inst);

// 2PM instance whose edges are those of `graph`. Ids are "u<i>" / "v<j>".
Instance to_matching_instance(const BipartiteGraph& graph);

// Partial injective map keyword -> bidder, with its inverse.
class Matching {
 public:
  Matching() = default;
  Matching(int num_left, int num_right)
      : bidder_of_(num_left, kNone), keyword_of_(num_right, kNone) {}

  void match(int u, int v);
  void unmatch_keyword(int u);

  int bidder_of(int u) const { return bidder_of_[u]; }
  int keyword_of(int v) const { return keyword_of_[v]; }
  bool keyword_matched(int u) const { return bidder_of_[u] != kNone; }
  bool bidder_matched(int v) const { return keyword_of_[v] != kNone; }
  int size() const { return size_; }
  int num_left() const { return static_cast<int>(bidder_of_.size()); }
  int num_right() const { return static_cast<int>(keyword_of_.size()); }

  // Matched (keyword, bidder) pairs sorted by keyword.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.bidder_of_ == b.bidder_of_;
  }

 private:
  std::vector<int> bidder_of_;
  std::vector<int> keyword_of_;
  int size_ = 0;
};

// True iff `m` is injective and uses only edges of `graph`.
bool is_valid_matching(const BipartiteGraph& graph, const Matching& m);

// Hopcroft-Karp. Ties are broken toward lower indices, so the result is a
// deterministic function of the graph.
Matching maximum_bipartite_matching(const BipartiteGraph& graph);
Matching maximum_bipartite_matching(const Instance& inst);

}  // namespace gsp

#endif  // GSP_GRAPH_H_
