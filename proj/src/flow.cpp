#include "dpplab/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "dpplab/error.hpp"

namespace dpplab {

MaxFlow::MaxFlow(int nodes) : n_(nodes), adj_(nodes), level_(nodes), it_(nodes) {
  if (nodes < 2) throw ArgumentError("MaxFlow: need at least two nodes");
}

int MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  if (from < 0 || from >= n_ || to < 0 || to >= n_) throw ArgumentError("MaxFlow: node out of range");
  if (capacity < 0) throw ArgumentError("MaxFlow: negative capacity");
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity});
  edges_.push_back({from, 0});
  original_.push_back(capacity);
  original_.push_back(0);
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  for (; it_[v] < adj_[v].size(); ++it_[v]) {
    const int id = adj_[v][it_[v]];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    const std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    std::fill(it_.begin(), it_.end(), 0);
    while (const std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow_on(int edge) const { return original_.at(edge) - edges_.at(edge).cap; }

std::vector<char> MaxFlow::reachable(int source) const {
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  seen[source] = 1;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = 1;
        q.push(e.to);
      }
    }
  }
  return seen;
}

}  // namespace dpplab
