#include "resmatch/chains.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace resmatch {

namespace {

bool benefits(const Instance& instance, int32_t category, int32_t patient) {
  return instance.category(category).priority.is_beneficiary(patient);
}

bool eligible(const Instance& instance, int32_t category, int32_t patient) {
  return instance.category(category).priority.is_eligible(patient);
}

void require(bool condition, const std::string& message) {
  if (!condition) fail(Errc::InvalidChain, message);
}

void require_distinct(std::vector<int32_t> values, const std::string& what) {
  std::sort(values.begin(), values.end());
  require(std::adjacent_find(values.begin(), values.end()) == values.end(),
          "repeated " + what + " in chain");
}

}  // namespace

void validate_chain(const Instance& instance, const Matching& mu, const AlternatingChain& chain) {
  const size_t m = chain.categories.size();
  require(m >= 1, "chain has no categories");
  for (int32_t c : chain.categories)
    require(c >= 0 && c < instance.num_categories(), "category index out of range");
  for (int32_t i : chain.patients)
    require(i >= 0 && i < instance.num_patients(), "patient index out of range");
  require_distinct(chain.categories, "category");
  require_distinct(chain.patients, "patient");

  // Entering hops are shared by all three shapes: patients[k] moves into
  // categories[k], which requires eligibility and not already holding a slot there.
  auto check_enter = [&](int32_t patient, int32_t category) {
    require(eligible(instance, category, patient),
            "patient " + instance.patient_id(patient) + " not eligible for " +
                instance.category(category).id);
    require(mu.to_category[patient] != category,
            "patient " + instance.patient_id(patient) + " already matched to " +
                instance.category(category).id);
  };

  switch (chain.kind) {
    case AlternatingChain::PatientAnchored: {
      require(chain.patients.size() == m + 1, "patient-anchored chain needs m+1 patients");
      require(mu.to_category[chain.patients[0]] == kUnmatched, "anchor patient must be unmatched");
      for (size_t k = 0; k < m; ++k) {
        check_enter(chain.patients[k], chain.categories[k]);
        require(mu.to_category[chain.patients[k + 1]] == chain.categories[k],
                "matching hop mismatch");
      }
      break;
    }
    case AlternatingChain::SlotAnchored: {
      require(chain.patients.size() == m, "slot-anchored chain needs m patients");
      std::vector<int32_t> fills = fill_counts(instance, mu);
      int32_t anchor = chain.categories[0];
      require(fills[anchor] < instance.category(anchor).reserve,
              "anchor category has no free slot");
      for (size_t k = 0; k < m; ++k) check_enter(chain.patients[k], chain.categories[k]);
      for (size_t k = 0; k + 1 < m; ++k)
        require(mu.to_category[chain.patients[k]] == chain.categories[k + 1],
                "matching hop mismatch");
      require(mu.to_category[chain.patients[m - 1]] != kUnmatched,
              "last patient of a slot-anchored chain must be matched");
      break;
    }
    case AlternatingChain::Cycle: {
      require(m >= 2, "cycle needs at least two matching hops");
      require(chain.patients.size() == m, "cycle needs as many patients as categories");
      for (size_t k = 0; k < m; ++k) {
        check_enter(chain.patients[k], chain.categories[k]);
        require(mu.to_category[chain.patients[k]] == chain.categories[(k + m - 1) % m],
                "matching hop mismatch");
      }
      break;
    }
  }
}

int64_t chain_potential(const Instance& instance, const Matching& mu,
                        const AlternatingChain& chain) {
  validate_chain(instance, mu, chain);
  int64_t gained = 0;
  int64_t lost = 0;
  // Every shape enters patients[k] into categories[k]; the set of patients
  // that leave their current category is the only difference.
  for (size_t k = 0; k < chain.categories.size(); ++k)
    if (benefits(instance, chain.categories[k], chain.patients[k])) ++gained;
  size_t first_leaver = chain.kind == AlternatingChain::PatientAnchored ? 1 : 0;
  for (size_t k = first_leaver; k < chain.patients.size(); ++k) {
    int32_t from = mu.to_category[chain.patients[k]];
    if (from != kUnmatched && benefits(instance, from, chain.patients[k])) ++lost;
  }
  return gained - lost;
}

Matching augment_chain(const Instance& instance, const Matching& mu,
                       const AlternatingChain& chain) {
  validate_chain(instance, mu, chain);
  Matching next = mu;
  for (size_t k = 0; k < chain.categories.size(); ++k)
    next.to_category[chain.patients[k]] = chain.categories[k];
  if (chain.kind == AlternatingChain::PatientAnchored)
    next.to_category[chain.patients.back()] = kUnmatched;
  return next;
}

ChainGraph build_chain_graph(const Instance& instance, const Matching& mu) {
  ChainGraph graph;
  graph.num_patients = instance.num_patients();
  graph.num_categories = instance.num_categories();
  std::vector<int32_t> fills = fill_counts(instance, mu);

  for (int32_t c = 0; c < graph.num_categories; ++c)
    if (fills[c] < instance.category(c).reserve)
      graph.edges.push_back({graph.source(), graph.v_category(c), 0});
  for (int32_t c = 0; c < graph.num_categories; ++c)
    for (int32_t i : instance.category(c).priority.eligibles)
      if (mu.to_category[i] != c)
        graph.edges.push_back(
            {graph.v_category(c), graph.v_patient(i), benefits(instance, c, i) ? -1 : 0});
  for (int32_t i = 0; i < graph.num_patients; ++i) {
    int32_t c = mu.to_category[i];
    if (c != kUnmatched)
      graph.edges.push_back(
          {graph.v_patient(i), graph.v_category(c), benefits(instance, c, i) ? 1 : 0});
  }

  for (int32_t i = 0; i < graph.num_patients; ++i)
    if (mu.to_category[i] == kUnmatched)
      graph.edges.push_back({graph.source(), graph.w_patient(i), 0});
  for (int32_t c = 0; c < graph.num_categories; ++c)
    for (int32_t i : instance.category(c).priority.eligibles)
      if (mu.to_category[i] != c)
        graph.edges.push_back(
            {graph.w_patient(i), graph.w_category(c), benefits(instance, c, i) ? -1 : 0});
  for (int32_t i = 0; i < graph.num_patients; ++i) {
    int32_t c = mu.to_category[i];
    if (c != kUnmatched)
      graph.edges.push_back(
          {graph.w_category(c), graph.w_patient(i), benefits(instance, c, i) ? 1 : 0});
  }
  return graph;
}

namespace {

constexpr int64_t kInfDist = std::numeric_limits<int64_t>::max() / 4;

/// Bellman-Ford over the chain graph: synchronous rounds restricted to
/// vertices relaxed in the previous round, with predecessor edges for path
/// and cycle reconstruction.
class ChainFinder {
 public:
  ChainFinder(const Instance& instance, const Matching& mu)
      : instance_(instance), mu_(mu), graph_(build_chain_graph(instance, mu)) {
    const int32_t v = graph_.num_vertices();
    offset_.assign(v + 1, 0);
    for (const auto& e : graph_.edges) ++offset_[e.from + 1];
    for (int32_t u = 0; u < v; ++u) offset_[u + 1] += offset_[u];
    order_.resize(graph_.edges.size());
    std::vector<int32_t> cursor(offset_.begin(), offset_.end() - 1);
    for (int32_t idx = 0; idx < static_cast<int32_t>(graph_.edges.size()); ++idx)
      order_[cursor[graph_.edges[idx].from]++] = idx;
  }

  const ChainGraph& graph() const { return graph_; }

  /// All vertex-disjoint positive chains one graph build can certify:
  /// negative cycles when present, otherwise negative completed paths.
  std::vector<AlternatingChain> find_disjoint() {
    std::vector<AlternatingChain> out;
    if (detect_negative_cycles()) {
      collect_cycles(out, /*first_only=*/false);
      return out;
    }
    shortest_paths_from_source();
    collect_paths(out, /*first_only=*/false);
    return out;
  }

  std::optional<AlternatingChain> find_one() {
    std::vector<AlternatingChain> out;
    if (detect_negative_cycles()) {
      collect_cycles(out, /*first_only=*/true);
    } else {
      shortest_paths_from_source();
      collect_paths(out, /*first_only=*/true);
    }
    if (out.empty()) return std::nullopt;
    return std::move(out.front());
  }

 private:
  enum class VertexKind { Source, VCategory, WCategory, VPatient, WPatient };

  VertexKind vertex_kind(int32_t v, int32_t* index) const {
    const int32_t c = graph_.num_categories;
    const int32_t n = graph_.num_patients;
    if (v == 0) return VertexKind::Source;
    if (v < 1 + c) return *index = v - 1, VertexKind::VCategory;
    if (v < 1 + 2 * c) return *index = v - 1 - c, VertexKind::WCategory;
    if (v < 1 + 2 * c + n) return *index = v - 1 - 2 * c, VertexKind::VPatient;
    return *index = v - 1 - 2 * c - n, VertexKind::WPatient;
  }

  bool relax_round(const std::vector<int32_t>& active, std::vector<int32_t>& next) {
    next.clear();
    for (int32_t u : active) {
      if (dist_[u] == kInfDist) continue;
      for (int32_t k = offset_[u]; k < offset_[u + 1]; ++k) {
        const auto& e = graph_.edges[order_[k]];
        int64_t candidate = dist_[u] + e.weight;
        if (candidate < dist_[e.to]) {
          dist_[e.to] = candidate;
          pred_[e.to] = order_[k];
          if (!in_next_[e.to]) {
            in_next_[e.to] = 1;
            next.push_back(e.to);
          }
        }
      }
    }
    for (int32_t u : next) in_next_[u] = 0;
    return !next.empty();
  }

  /// Super-source relaxation: every vertex starts at distance zero, so any
  /// relaxation surviving |V| rounds witnesses a negative cycle. Long before
  /// that, a cycle in the predecessor graph already certifies one, so the
  /// walk is attempted periodically to stop early.
  bool detect_negative_cycles() {
    const int32_t v = graph_.num_vertices();
    dist_.assign(v, 0);
    pred_.assign(v, -1);
    in_next_.assign(v, 0);
    std::vector<int32_t> active(v);
    for (int32_t u = 0; u < v; ++u) active[u] = u;
    std::vector<int32_t> next;
    cycle_seeds_.clear();
    for (int32_t round = 0; round < v; ++round) {
      if (!relax_round(active, next)) return false;
      active.swap(next);
      if ((round & 31) == 31 && pred_cycle_confirmed(active)) break;
    }
    cycle_seeds_ = active;
    std::sort(cycle_seeds_.begin(), cycle_seeds_.end());
    return true;
  }

  bool pred_cycle_confirmed(const std::vector<int32_t>& active) const {
    begin_walk_pass();
    int32_t attempts = 0;
    for (int32_t seed : active) {
      if (++attempts > 8) break;
      std::vector<int32_t> cycle = cycle_vertices_from(seed);
      if (!cycle.empty() && cycle_weight(cycle) < 0) return true;
    }
    return false;
  }

  void shortest_paths_from_source() {
    const int32_t v = graph_.num_vertices();
    dist_.assign(v, kInfDist);
    pred_.assign(v, -1);
    in_next_.assign(v, 0);
    dist_[graph_.source()] = 0;
    std::vector<int32_t> active{graph_.source()};
    std::vector<int32_t> next;
    for (int32_t round = 0; round < v && relax_round(active, next); ++round) active.swap(next);
  }

  /// Walks predecessor edges until the walk bites its own tail (a cycle),
  /// leaves the predecessor graph, or runs into territory another walk of
  /// the same pass has already covered. Stamp bookkeeping keeps the total
  /// walking cost of a pass linear in the vertex count.
  void begin_walk_pass() const {
    if (walk_stamp_.size() != static_cast<size_t>(graph_.num_vertices()))
      walk_stamp_.assign(graph_.num_vertices(), 0);
    pass_base_ = ++walk_counter_;
  }

  std::vector<int32_t> cycle_vertices_from(int32_t seed) const {
    const int64_t my_stamp = ++walk_counter_;
    int32_t cursor = seed;
    while (true) {
      if (pred_[cursor] < 0) return {};
      if (walk_stamp_[cursor] == my_stamp) break;  // looped back: cursor is on the cycle
      if (walk_stamp_[cursor] >= pass_base_) return {};  // covered by an earlier walk
      walk_stamp_[cursor] = my_stamp;
      cursor = graph_.edges[pred_[cursor]].from;
    }
    std::vector<int32_t> backward{cursor};
    for (int32_t walk = graph_.edges[pred_[cursor]].from; walk != cursor;
         walk = graph_.edges[pred_[walk]].from)
      backward.push_back(walk);
    std::reverse(backward.begin(), backward.end());
    return backward;
  }

  int64_t cycle_weight(const std::vector<int32_t>& cycle) const {
    int64_t total = 0;
    for (size_t k = 0; k < cycle.size(); ++k) {
      int32_t to = cycle[(k + 1) % cycle.size()];
      total += graph_.edges[pred_[to]].weight;
    }
    return total;
  }

  void collect_cycles(std::vector<AlternatingChain>& out, bool first_only) {
    begin_walk_pass();
    std::vector<uint8_t> used_patient(graph_.num_patients, 0);
    std::vector<uint8_t> used_category(graph_.num_categories, 0);
    for (int32_t seed : cycle_seeds_) {
      std::vector<int32_t> cycle = cycle_vertices_from(seed);
      if (cycle.empty() || cycle_weight(cycle) >= 0) continue;
      AlternatingChain chain = cycle_to_chain(cycle);
      if (!claim(chain, kUnmatched, used_patient, used_category)) continue;
      out.push_back(std::move(chain));
      if (first_only) return;
    }
  }

  void collect_paths(std::vector<AlternatingChain>& out, bool first_only) {
    struct Candidate {
      int64_t cost;
      int32_t vertex;
      int32_t patient;
      bool v_copy;
    };
    std::vector<Candidate> candidates;
    for (int32_t i = 0; i < graph_.num_patients; ++i) {
      int32_t c = mu_.to_category[i];
      if (c == kUnmatched) continue;
      if (int64_t d = dist_[graph_.w_patient(i)]; d < 0)
        candidates.push_back({d, graph_.w_patient(i), i, false});
      if (int64_t d = dist_[graph_.v_patient(i)]; d < kInfDist) {
        // Ending a v-copy path at a patient frees its current slot, so the
        // leave weight of that final matching edge belongs to the total.
        int64_t cost = d + (benefits(instance_, c, i) ? 1 : 0);
        if (cost < 0) candidates.push_back({cost, graph_.v_patient(i), i, true});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.cost != b.cost ? a.cost < b.cost : a.vertex < b.vertex;
    });
    std::vector<uint8_t> used_patient(graph_.num_patients, 0);
    std::vector<uint8_t> used_category(graph_.num_categories, 0);
    for (const Candidate& candidate : candidates) {
      AlternatingChain chain = path_to_chain(candidate.vertex, candidate.v_copy);
      int32_t exit_category = candidate.v_copy ? mu_.to_category[candidate.patient] : kUnmatched;
      if (!claim(chain, exit_category, used_patient, used_category)) continue;
      out.push_back(std::move(chain));
      if (first_only) return;
    }
  }

  /// Marks the chain's patients and categories (and the slot-anchored exit
  /// category) as used; refuses when any of them was claimed by an earlier
  /// chain, which keeps the accepted set augmentable in one batch.
  bool claim(const AlternatingChain& chain, int32_t exit_category,
             std::vector<uint8_t>& used_patient, std::vector<uint8_t>& used_category) const {
    for (int32_t i : chain.patients)
      if (used_patient[i]) return false;
    for (int32_t c : chain.categories)
      if (used_category[c]) return false;
    if (exit_category != kUnmatched && used_category[exit_category]) return false;
    for (int32_t i : chain.patients) used_patient[i] = 1;
    for (int32_t c : chain.categories) used_category[c] = 1;
    if (exit_category != kUnmatched) used_category[exit_category] = 1;
    return true;
  }

  AlternatingChain cycle_to_chain(const std::vector<int32_t>& cycle) const {
    // Rotate so the cycle starts at the canonical vertex for its copy.
    std::vector<int32_t> patients;
    std::vector<int32_t> categories;
    int32_t index = 0;
    bool v_copy = vertex_kind(cycle[0], &index) == VertexKind::VCategory ||
                  vertex_kind(cycle[0], &index) == VertexKind::VPatient;
    size_t start = 0;
    for (size_t k = 0; k < cycle.size(); ++k) {
      VertexKind kind = vertex_kind(cycle[k], &index);
      if ((v_copy && kind == VertexKind::VCategory) || (!v_copy && kind == VertexKind::WPatient)) {
        start = k;
        break;
      }
    }
    for (size_t k = 0; k < cycle.size(); ++k) {
      int32_t vertex = cycle[(start + k) % cycle.size()];
      VertexKind kind = vertex_kind(vertex, &index);
      if (kind == VertexKind::VCategory || kind == VertexKind::WCategory)
        categories.push_back(index);
      else
        patients.push_back(index);
    }
    AlternatingChain chain;
    chain.kind = AlternatingChain::Cycle;
    if (v_copy) {
      // v-copy order pairs each patient with the category it leaves; the
      // chain convention pairs it with the category it enters, so reverse.
      std::reverse(patients.begin(), patients.end());
      std::reverse(categories.begin(), categories.end());
    }
    chain.patients = std::move(patients);
    chain.categories = std::move(categories);
    return chain;
  }

  AlternatingChain path_to_chain(int32_t endpoint, bool v_copy) const {
    std::vector<int32_t> vertices;
    for (int32_t v = endpoint; v != graph_.source(); v = graph_.edges[pred_[v]].from)
      vertices.push_back(v);
    std::reverse(vertices.begin(), vertices.end());
    AlternatingChain chain;
    chain.kind = v_copy ? AlternatingChain::SlotAnchored : AlternatingChain::PatientAnchored;
    int32_t index = 0;
    for (int32_t v : vertices) {
      VertexKind kind = vertex_kind(v, &index);
      if (kind == VertexKind::VCategory || kind == VertexKind::WCategory)
        chain.categories.push_back(index);
      else
        chain.patients.push_back(index);
    }
    return chain;
  }

  const Instance& instance_;
  const Matching& mu_;
  ChainGraph graph_;
  std::vector<int32_t> offset_;
  std::vector<int32_t> order_;
  std::vector<int64_t> dist_;
  std::vector<int32_t> pred_;
  std::vector<uint8_t> in_next_;
  std::vector<int32_t> cycle_seeds_;
  mutable std::vector<int64_t> walk_stamp_;
  mutable int64_t walk_counter_ = 0;
  mutable int64_t pass_base_ = 1;
};

}  // namespace

std::optional<AlternatingChain> find_positive_chain(const Instance& instance, const Matching& mu) {
  return ChainFinder(instance, mu).find_one();
}

Matching max_in_max(const Instance& instance, const Matching& mu1) {
  if (!check_eligibility(instance, mu1).empty())
    throw std::invalid_argument("max_in_max input must comply with eligibility requirements");
  Matching mu2 = mu1;
  // Each accepted chain raises the beneficiary count by at least one, so the
  // number of augmentation phases is bounded by the total supply.
  for (int64_t phase = 0; phase <= instance.total_supply(); ++phase) {
    std::vector<AlternatingChain> chains = ChainFinder(instance, mu2).find_disjoint();
    if (chains.empty()) break;
    for (const AlternatingChain& chain : chains) mu2 = augment_chain(instance, mu2, chain);
  }
  return mu2;
}

}  // namespace resmatch
