#pragma once

#include <cstdint>
#include <vector>

namespace dpplab {

/// Dinic max-flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  /// Adds a directed edge and returns its id.
  int add_edge(int from, int to, std::int64_t capacity);
  std::int64_t run(int source, int sink);

  std::int64_t flow_on(int edge) const;
  /// Nodes reachable from `source` in the residual graph after run().
  std::vector<char> reachable(int source) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> original_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace dpplab
