#pragma once

#include <cstdint>
#include <vector>

#include "resmatch/model.hpp"

namespace resmatch {

enum class EdgeRule : uint8_t {
  Eligible,     // edge (patient, slot of c) iff the patient is eligible for c
  Beneficiary,  // edge iff the patient is a beneficiary of c
};

/// Bipartite graph of patients against category slots. Each category c is
/// expanded into reserve(c) interchangeable slots, so the slots of one
/// category always have identical neighborhoods; the adjacency is therefore
/// stored per (patient, category) pair. Vertex order is declaration order.
struct SlotGraph {
  int32_t num_patients = 0;
  int32_t num_categories = 0;
  std::vector<int32_t> capacity;          // per category (= slots per category)
  std::vector<int32_t> slot_offset;       // category -> first slot index; size C+1, last = q
  std::vector<std::vector<int32_t>> adj;  // patient -> eligible categories, declaration order

  int64_t num_slots() const { return slot_offset.empty() ? 0 : slot_offset.back(); }

  /// Number of (patient, slot) edges, counting every slot of a reachable category.
  int64_t edge_count() const;
};

SlotGraph build_slot_graph(const Instance& instance, EdgeRule rule = EdgeRule::Eligible);

/// Maximum-cardinality matching via Hopcroft-Karp phases (layered BFS plus
/// phase-local DFS) run directly on the capacitated graph. The optional warm
/// start must be feasible for the graph; its matched pairs seed the search.
/// Deterministic: adjacency and queues are walked in declaration order.
Matching maximum_matching(const SlotGraph& graph, const Matching* warm_start = nullptr);

/// Size of a maximum matching on the eligibility slot graph.
int64_t max_resource_size(const Instance& instance);

}  // namespace resmatch
