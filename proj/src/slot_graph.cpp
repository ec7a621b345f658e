#include "resmatch/slot_graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace resmatch {

int64_t SlotGraph::edge_count() const {
  int64_t total = 0;
  for (const auto& categories : adj)
    for (int32_t c : categories) total += capacity[c];
  return total;
}

SlotGraph build_slot_graph(const Instance& instance, EdgeRule rule) {
  SlotGraph graph;
  graph.num_patients = instance.num_patients();
  graph.num_categories = instance.num_categories();
  graph.capacity.reserve(graph.num_categories);
  graph.slot_offset.assign(1, 0);
  graph.adj.assign(graph.num_patients, {});
  for (int32_t c = 0; c < graph.num_categories; ++c) {
    const Category& category = instance.category(c);
    graph.capacity.push_back(category.reserve);
    graph.slot_offset.push_back(graph.slot_offset.back() + category.reserve);
    const std::vector<int32_t>& reachable = rule == EdgeRule::Eligible
                                                ? category.priority.eligibles
                                                : category.priority.beneficiaries;
    for (int32_t i : reachable) graph.adj[i].push_back(c);
  }
  return graph;
}

namespace {

constexpr int32_t kInf = std::numeric_limits<int32_t>::max();

struct HopcroftKarp {
  const SlotGraph& graph;
  std::vector<int32_t> match;              // patient -> category or kUnmatched
  std::vector<std::vector<int32_t>> held;  // category -> matched patients
  std::vector<int32_t> dist;               // patient BFS layer
  std::vector<int32_t> cat_layer;          // layer of the patients held by a category
  std::vector<uint32_t> visited;           // DFS stamp per patient
  std::vector<uint32_t> cat_dead;          // DFS stamp: category exhausted this phase
  std::vector<int32_t> queue;
  uint32_t stamp = 0;

  explicit HopcroftKarp(const SlotGraph& g)
      : graph(g),
        match(g.num_patients, kUnmatched),
        held(g.num_categories),
        dist(g.num_patients),
        cat_layer(g.num_categories),
        visited(g.num_patients, 0),
        cat_dead(g.num_categories, 0) {
    queue.reserve(g.num_patients);
  }

  void seed(const Matching& warm) {
    for (int32_t i = 0; i < graph.num_patients; ++i) {
      int32_t c = warm.to_category[i];
      if (c == kUnmatched) continue;
      if (!std::binary_search(graph.adj[i].begin(), graph.adj[i].end(), c) ||
          static_cast<int32_t>(held[c].size()) >= graph.capacity[c])
        throw std::invalid_argument("warm start matching is infeasible for the slot graph");
      match[i] = c;
      held[c].push_back(i);
    }
  }

  bool bfs() {
    queue.clear();
    for (int32_t i = 0; i < graph.num_patients; ++i) {
      dist[i] = match[i] == kUnmatched ? 0 : kInf;
      if (dist[i] == 0) queue.push_back(i);
    }
    std::fill(cat_layer.begin(), cat_layer.end(), kInf);
    bool free_slot_reachable = false;
    for (size_t head = 0; head < queue.size(); ++head) {
      int32_t u = queue[head];
      for (int32_t c : graph.adj[u]) {
        if (cat_layer[c] != kInf) continue;
        cat_layer[c] = dist[u] + 1;
        if (static_cast<int32_t>(held[c].size()) < graph.capacity[c]) {
          free_slot_reachable = true;
          continue;
        }
        for (int32_t v : held[c]) {
          if (dist[v] == kInf) {
            dist[v] = dist[u] + 1;
            queue.push_back(v);
          }
        }
      }
    }
    return free_slot_reachable;
  }

  bool dfs(int32_t u) {
    visited[u] = stamp;
    for (int32_t c : graph.adj[u]) {
      if (static_cast<int32_t>(held[c].size()) < graph.capacity[c]) {
        held[c].push_back(u);
        match[u] = c;
        return true;
      }
    }
    for (int32_t c : graph.adj[u]) {
      // Stay on the BFS layers: scans from other layers would mark the
      // category dead for callers that could still use it.
      if (cat_layer[c] != dist[u] + 1 || cat_dead[c] == stamp) continue;
      for (size_t idx = 0; idx < held[c].size(); ++idx) {
        int32_t v = held[c][idx];
        if (visited[v] != stamp && dist[v] == dist[u] + 1 && dfs(v)) {
          held[c][idx] = u;  // v was rematched elsewhere by the recursive call
          match[u] = c;
          return true;
        }
      }
      cat_dead[c] = stamp;  // nothing in this category can extend a path this phase
    }
    return false;
  }

  Matching solve() {
    while (bfs()) {
      ++stamp;
      bool progressed = false;
      for (int32_t i = 0; i < graph.num_patients; ++i)
        if (match[i] == kUnmatched && visited[i] != stamp && dfs(i)) progressed = true;
      if (!progressed) break;
    }
    Matching mu;
    mu.to_category = std::move(match);
    return mu;
  }
};

}  // namespace

Matching maximum_matching(const SlotGraph& graph, const Matching* warm_start) {
  HopcroftKarp hk(graph);
  if (warm_start) hk.seed(*warm_start);
  return hk.solve();
}

int64_t max_resource_size(const Instance& instance) {
  Matching mu = maximum_matching(build_slot_graph(instance));
  int64_t size = 0;
  for (int32_t c : mu.to_category)
    if (c != kUnmatched) ++size;
  return size;
}

}  // namespace resmatch
