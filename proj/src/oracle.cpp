#include "resmatch/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "resmatch/slot_graph.hpp"

namespace resmatch {

namespace {

void check_guard(const Instance& instance, const EnumerationGuard& guard) {
  if (guard.force) return;
  if (instance.num_patients() > guard.max_patients ||
      instance.total_supply() > guard.max_supply)
    fail(Errc::TooLarge, "instance exceeds the enumeration guard (" +
                             std::to_string(instance.num_patients()) + " patients, supply " +
                             std::to_string(instance.total_supply()) + "); bound is about " +
                             std::to_string(enumeration_bound(instance)) + " matchings");
}

std::vector<std::vector<int32_t>> eligible_categories(const Instance& instance) {
  std::vector<std::vector<int32_t>> adj(instance.num_patients());
  for (int32_t c = 0; c < instance.num_categories(); ++c)
    for (int32_t i : instance.category(c).priority.eligibles) adj[i].push_back(c);
  return adj;
}

}  // namespace

double enumeration_bound(const Instance& instance) {
  return std::pow(static_cast<double>(instance.num_categories()) + 1.0,
                  static_cast<double>(instance.num_patients()));
}

void for_each_matching(const Instance& instance, const EnumerationGuard& guard,
                       const std::function<bool(const Matching&)>& visit) {
  check_guard(instance, guard);
  std::vector<std::vector<int32_t>> adj = eligible_categories(instance);
  std::vector<int32_t> remaining(instance.num_categories());
  for (int32_t c = 0; c < instance.num_categories(); ++c)
    remaining[c] = instance.category(c).reserve;
  Matching mu = empty_matching(instance);
  bool stopped = false;

  auto recurse = [&](auto&& self, int32_t patient) -> void {
    if (stopped) return;
    if (patient == instance.num_patients()) {
      if (!visit(mu)) stopped = true;
      return;
    }
    mu.to_category[patient] = kUnmatched;
    self(self, patient + 1);
    for (int32_t c : adj[patient]) {
      if (remaining[c] == 0) continue;
      --remaining[c];
      mu.to_category[patient] = c;
      self(self, patient + 1);
      mu.to_category[patient] = kUnmatched;
      ++remaining[c];
      if (stopped) return;
    }
  };
  recurse(recurse, 0);
}

std::vector<Matching> enumerate_matchings(const Instance& instance,
                                          const EnumerationGuard& guard) {
  std::vector<Matching> out;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    out.push_back(mu);
    return true;
  });
  return out;
}

int64_t oracle_max_resource(const Instance& instance, const EnumerationGuard& guard) {
  int64_t best = 0;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    best = std::max(best, matching_stats(instance, mu).assigned);
    return true;
  });
  return best;
}

int64_t oracle_max_beneficiary(const Instance& instance, const EnumerationGuard& guard) {
  int64_t best = 0;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    best = std::max(best, matching_stats(instance, mu).beneficiary_assigned);
    return true;
  });
  return best;
}

MatchingStats oracle_max_in_max(const Instance& instance, const EnumerationGuard& guard) {
  MatchingStats best;
  best.beneficiary_assigned = -1;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    MatchingStats stats = matching_stats(instance, mu);
    if (stats.assigned > best.assigned ||
        (stats.assigned == best.assigned &&
         stats.beneficiary_assigned > best.beneficiary_assigned))
      best = stats;
    return true;
  });
  if (best.beneficiary_assigned < 0) best.beneficiary_assigned = 0;
  return best;
}

bool oracle_joint_achievable(const Instance& instance, const EnumerationGuard& guard) {
  int64_t max_resource = oracle_max_resource(instance, guard);
  int64_t max_beneficiary = oracle_max_beneficiary(instance, guard);
  bool found = false;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    MatchingStats stats = matching_stats(instance, mu);
    if (stats.assigned == max_resource && stats.beneficiary_assigned == max_beneficiary) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

uint64_t matched_mask(const Matching& mu) {
  uint64_t mask = 0;
  for (size_t i = 0; i < mu.to_category.size(); ++i)
    if (mu.to_category[i] != kUnmatched) mask |= uint64_t{1} << i;
  return mask;
}

std::vector<uint64_t> achievable_masks(const Instance& instance, const EnumerationGuard& guard) {
  if (instance.num_patients() > 63)
    fail(Errc::TooLarge, "Pareto enumeration supports at most 63 patients");
  std::unordered_set<uint64_t> seen;
  for_each_matching(instance, guard, [&](const Matching& mu) {
    seen.insert(matched_mask(mu));
    return true;
  });
  std::vector<uint64_t> masks(seen.begin(), seen.end());
  std::sort(masks.begin(), masks.end());
  return masks;
}

}  // namespace

bool is_pareto_optimal_bruteforce(const Instance& instance, const Matching& mu,
                                  const EnumerationGuard& guard) {
  uint64_t mask = matched_mask(mu);
  for (uint64_t other : achievable_masks(instance, guard))
    if (other != mask && (other & mask) == mask) return false;
  return true;
}

bool check_pareto_maximality_equivalence(const Instance& instance, const EnumerationGuard& guard) {
  std::vector<uint64_t> masks = achievable_masks(instance, guard);
  int32_t max_assigned = 0;
  for (uint64_t mask : masks) max_assigned = std::max(max_assigned, std::popcount(mask));
  for (uint64_t mask : masks) {
    bool pareto = true;
    for (uint64_t other : masks) {
      if (other != mask && (other & mask) == mask) {
        pareto = false;
        break;
      }
    }
    if (pareto != (std::popcount(mask) == max_assigned)) return false;
  }
  return true;
}

HallReport hall_check(const Instance& instance) {
  HallReport report;
  const int64_t q = instance.total_supply();
  std::vector<int64_t> sparse_memberships(instance.num_patients(), 0);
  for (int32_t c = 0; c < instance.num_categories(); ++c) {
    const auto& beneficiaries = instance.category(c).priority.beneficiaries;
    if (static_cast<int64_t>(beneficiaries.size()) >= q) continue;
    report.sparse.push_back(c);
    for (int32_t i : beneficiaries) ++sparse_memberships[i];
  }
  for (int64_t count : sparse_memberships) report.b = std::max(report.b, count);

  // The double-counting step of the possibility proof divides by b, so the
  // premise is only meaningful with b at least one.
  int64_t effective_b = std::max<int64_t>(report.b, 1);
  report.premise_holds = true;
  for (int32_t c = 0; c < instance.num_categories(); ++c) {
    int64_t needed = std::min(q, effective_b * instance.category(c).reserve);
    if (static_cast<int64_t>(instance.category(c).priority.beneficiaries.size()) < needed) {
      report.premise_holds = false;
      break;
    }
  }

  Matching mu = maximum_matching(build_slot_graph(instance, EdgeRule::Beneficiary));
  report.all_beneficiary_exists = matching_stats(instance, mu).assigned == q;
  return report;
}

ChainDecomposition decompose_symmetric_difference(const Instance& instance, const Matching& first,
                                                  const Matching& second) {
  const int32_t n = instance.num_patients();
  const int32_t num_categories = instance.num_categories();
  std::vector<int64_t> slot_offset(num_categories + 1, 0);
  for (int32_t c = 0; c < num_categories; ++c)
    slot_offset[c + 1] = slot_offset[c] + instance.category(c).reserve;
  const int64_t q = slot_offset[num_categories];

  // Canonical slot choice: patients assigned to c by both matchings occupy
  // the lowest slots in patient order, then each side fills the rest.
  std::vector<int64_t> slot_first(n, -1);
  std::vector<int64_t> slot_second(n, -1);
  for (int32_t c = 0; c < num_categories; ++c) {
    int64_t cursor_shared = slot_offset[c];
    for (int32_t i = 0; i < n; ++i)
      if (first.to_category[i] == c && second.to_category[i] == c) {
        slot_first[i] = slot_second[i] = cursor_shared;
        ++cursor_shared;
      }
    int64_t cursor = cursor_shared;
    for (int32_t i = 0; i < n; ++i)
      if (first.to_category[i] == c && second.to_category[i] != c) slot_first[i] = cursor++;
    cursor = cursor_shared;
    for (int32_t i = 0; i < n; ++i)
      if (second.to_category[i] == c && first.to_category[i] != c) slot_second[i] = cursor++;
  }

  // Per-vertex incidence in the symmetric difference; vertices are the n
  // patients followed by the q slots.
  struct Incidence {
    int64_t first_peer = -1;
    int64_t second_peer = -1;
  };
  std::vector<Incidence> inc(n + q);
  auto slot_vertex = [&](int64_t slot) { return n + slot; };
  for (int32_t i = 0; i < n; ++i) {
    if (first.to_category[i] != second.to_category[i]) {
      if (slot_first[i] >= 0) {
        inc[i].first_peer = slot_vertex(slot_first[i]);
        inc[slot_vertex(slot_first[i])].first_peer = i;
      }
      if (slot_second[i] >= 0) {
        inc[i].second_peer = slot_vertex(slot_second[i]);
        inc[slot_vertex(slot_second[i])].second_peer = i;
      }
    }
  }

  auto slot_category = [&](int64_t vertex) {
    int64_t slot = vertex - n;
    return static_cast<int32_t>(
        std::upper_bound(slot_offset.begin(), slot_offset.end(), slot) - slot_offset.begin() - 1);
  };
  auto edge_beneficiary = [&](int64_t patient_vertex, int64_t slot_vtx) {
    return instance.category(slot_category(slot_vtx))
        .priority.is_beneficiary(static_cast<int32_t>(patient_vertex));
  };

  ChainDecomposition result;
  std::vector<uint8_t> visited(n + q, 0);

  auto walk = [&](int64_t start) {
    ChainDecomposition::Component component{ChainDecomposition::Neutral, false, 0, 0, 0};
    // Follow the path/cycle, alternating between first- and second-edges.
    int64_t current = start;
    int64_t came_from = -1;
    while (true) {
      visited[current] = 1;
      int64_t via_first = inc[current].first_peer;
      int64_t via_second = inc[current].second_peer;
      int64_t next = -1;
      bool next_is_first = false;
      if (via_first != -1 && via_first != came_from && !(visited[via_first] && via_first != start)) {
        next = via_first;
        next_is_first = true;
      } else if (via_second != -1 && via_second != came_from &&
                 !(visited[via_second] && via_second != start)) {
        next = via_second;
        next_is_first = false;
      }
      if (next == -1) break;
      bool patient_side = current < n;
      int64_t patient_vertex = patient_side ? current : next;
      int64_t slot_vtx = patient_side ? next : current;
      bool beneficiary = edge_beneficiary(patient_vertex, slot_vtx);
      if (next_is_first) {
        ++component.edges_first;
        if (beneficiary) --component.potential;
      } else {
        ++component.edges_second;
        if (beneficiary) ++component.potential;
      }
      if (next == start) {  // closed a cycle
        component.is_cycle = true;
        break;
      }
      came_from = current;
      current = next;
    }
    return component;
  };

  auto degree = [&](int64_t v) {
    return (inc[v].first_peer != -1 ? 1 : 0) + (inc[v].second_peer != -1 ? 1 : 0);
  };

  auto classify = [&](ChainDecomposition::Component component) {
    if (component.edges_first == component.edges_second)
      component.kind = ChainDecomposition::Neutral;
    else if (component.edges_second > component.edges_first)
      component.kind = ChainDecomposition::Incremental;
    else
      component.kind = ChainDecomposition::Decremental;
    switch (component.kind) {
      case ChainDecomposition::Neutral:
        ++result.neutral_count;
        result.neutral_potential_sum += component.potential;
        break;
      case ChainDecomposition::Incremental: ++result.incremental_count; break;
      case ChainDecomposition::Decremental: ++result.decremental_count; break;
      case ChainDecomposition::Isolated: break;
    }
    result.components.push_back(component);
  };

  // Paths first (walk from the endpoints), then the remaining cycles.
  for (int64_t v = 0; v < n + q; ++v)
    if (!visited[v] && degree(v) == 1) classify(walk(v));
  for (int64_t v = 0; v < n + q; ++v)
    if (!visited[v] && degree(v) == 2) classify(walk(v));
  for (int64_t v = 0; v < n + q; ++v) {
    if (visited[v] || degree(v) != 0) continue;
    visited[v] = 1;
    ++result.isolated_count;
    result.components.push_back({ChainDecomposition::Isolated, false, 0, 0, 0});
  }
  return result;
}

}  // namespace resmatch
