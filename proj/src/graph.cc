#include "gsp/graph.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace gsp {

void BipartiteGraph::add_edge(int u, int v) {
  if (u < 0 || u >= num_left || v < 0 || v >= num_right) {
    throw Error("add_edge: vertex out of range");
  }
  auto& row = adj[u];
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) row.insert(it, v);
}

bool BipartiteGraph::has_edge(int u, int v) const {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

int BipartiteGraph::num_edges() const {
  int n = 0;
  for (const auto& row : adj) n += static_cast<int>(row.size());
  return n;
}

std::vector<std::vector<int>> BipartiteGraph::right_adjacency() const {
  std::vector<std::vector<int>> radj(num_right);
  for (int u = 0; u < num_left; ++u) {
    for (int v : adj[u]) radj[v].push_back(u);
  }
  return radj;
}

BipartiteGraph to_graph(const Instance& inst) {
  BipartiteGraph g(inst.num_keywords(), inst.num_bidders());
  for (int u = 0; u < inst.num_keywords(); ++u) {
    for (const auto& e : inst.bids_on(u)) {
      if (e.amount > 0) g.adj[u].push_back(e.bidder);
    }
  }
  return g;
}

Instance to_matching_instance(const BipartiteGraph& graph) {
  Instance inst(Flavor::kMatching);
  for (int u = 0; u < graph.num_left; ++u) inst.add_keyword("u" + std::to_string(u));
  for (int v = 0; v < graph.num_right; ++v) {
    inst.add_bidder("v" + std::to_string(v), 1);
  }
  for (int u = 0; u < graph.num_left; ++u) {
    for (int v : graph.adj[u]) inst.set_bid(u, v, 1);
  }
  return inst;
}

void Matching::match(int u, int v) {
  if (bidder_of_[u] != kNone || keyword_of_[v] != kNone) {
    throw Error("match: vertex already matched");
  }
  bidder_of_[u] = v;
  keyword_of_[v] = u;
  ++size_;
}

void Matching::unmatch_keyword(int u) {
  const int v = bidder_of_[u];
  if (v == kNone) return;
  bidder_of_[u] = kNone;
  keyword_of_[v] = kNone;
  --size_;
}

std::vector<std::pair<int, int>> Matching::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_left(); ++u) {
    if (bidder_of_[u] != kNone) out.emplace_back(u, bidder_of_[u]);
  }
  return out;
}

bool is_valid_matching(const BipartiteGraph& graph, const Matching& m) {
  if (m.num_left() != graph.num_left || m.num_right() != graph.num_right) {
    return false;
  }
  int count = 0;
  for (int u = 0; u < graph.num_left; ++u) {
    const int v = m.bidder_of(u);
    if (v == kNone) continue;
    if (!graph.has_edge(u, v) || m.keyword_of(v) != u) return false;
    ++count;
  }
  return count == m.size();
}

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        mate_left_(g.num_left, kNone),
        mate_right_(g.num_right, kNone),
        dist_(g.num_left),
        next_edge_(g.num_left) {}

  Matching run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (int u = 0; u < g_.num_left; ++u) {
        if (mate_left_[u] == kNone) dfs(u);
      }
    }
    Matching m(g_.num_left, g_.num_right);
    for (int u = 0; u < g_.num_left; ++u) {
      if (mate_left_[u] != kNone) m.match(u, mate_left_[u]);
    }
    return m;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  // Layers free keywords at distance 0; true iff an augmenting path exists.
  bool bfs() {
    std::deque<int> queue;
    for (int u = 0; u < g_.num_left; ++u) {
      if (mate_left_[u] == kNone) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : g_.adj[u]) {
        const int w = mate_right_[v];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    const auto& row = g_.adj[u];
    for (int& i = next_edge_[u]; i < static_cast<int>(row.size()); ++i) {
      const int v = row[i];
      const int w = mate_right_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        mate_left_[u] = v;
        mate_right_[v] = u;
        ++i;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> mate_left_;
  std::vector<int> mate_right_;
  std::vector<int> dist_;
  std::vector<int> next_edge_;
};

}  // namespace

Matching maximum_bipartite_matching(const BipartiteGraph& graph) {
  return HopcroftKarp(graph).run();
}

Matching maximum_bipartite_matching(const Instance& inst) {
  return maximum_bipartite_matching(to_graph(inst));
}

}  // namespace gsp
