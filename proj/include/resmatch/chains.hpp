#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resmatch/model.hpp"

namespace resmatch {

/// Alternating chain over a matching. Token conventions:
///   PatientAnchored: sequence (i0, c1, i1, ..., cm, im); i0 is unmatched and
///     enters c1, each ck's occupant ik shifts forward, im ends up unmatched.
///     patients has one more entry than categories.
///   SlotAnchored: sequence (c1, i1, ..., cm, im); c1 has a free slot, ik
///     enters ck, mu(ik) = c(k+1) for k < m, and im leaves mu(im) (a category
///     outside the sequence), which gains a free slot.
///   Cycle: sequence (i0, c1, i1, ..., cm, i0); patients[k] enters
///     categories[k] and leaves categories[k-1 mod m]. patients and categories
///     have equal length; the closing token is implicit.
struct AlternatingChain {
  enum Kind : uint8_t { PatientAnchored, SlotAnchored, Cycle };
  Kind kind;
  std::vector<int32_t> patients;
  std::vector<int32_t> categories;
};

/// Throws INVALID_CHAIN unless the chain is well formed against the matching:
/// eligibility on every entering hop, matching consistency on every leaving
/// hop, a free anchor slot for SlotAnchored, no repeated patient or category.
void validate_chain(const Instance& instance, const Matching& mu, const AlternatingChain& chain);

/// Net beneficiary gain of augmenting the chain: entries into categories the
/// patient benefits from, minus exits from categories the leaving patient
/// benefits from (for SlotAnchored this includes the final patient leaving
/// its current category). Throws INVALID_CHAIN on malformed chains.
int64_t chain_potential(const Instance& instance, const Matching& mu,
                        const AlternatingChain& chain);

/// Applies the chain and returns the new matching. Keeps the assigned count
/// and eligibility compliance; changes the beneficiary count by exactly the
/// chain potential.
Matching augment_chain(const Instance& instance, const Matching& mu,
                       const AlternatingChain& chain);

/// Weighted digraph over two disjoint vertex copies. The v-copy encodes
/// slot-anchored chains (source edges to categories with a free slot), the
/// w-copy patient-anchored chains (source edges to unmatched patients).
/// Within a copy, a category-to-patient edge means the patient may enter the
/// category (weight -1 when a beneficiary, else 0) and a patient-to-category
/// edge follows the matching (weight +1 when leaving a category the patient
/// benefits from, else 0). A path traced for a chain has weight equal to
/// minus the chain potential.
struct ChainGraph {
  struct Edge {
    int32_t from;
    int32_t to;
    int32_t weight;
  };

  int32_t num_patients = 0;
  int32_t num_categories = 0;
  std::vector<Edge> edges;  // deterministic construction order

  int32_t num_vertices() const { return 1 + 2 * (num_patients + num_categories); }

  // Vertex layout: source, then v-copy categories, w-copy categories,
  // v-copy patients, w-copy patients.
  int32_t source() const { return 0; }
  int32_t v_category(int32_t c) const { return 1 + c; }
  int32_t w_category(int32_t c) const { return 1 + num_categories + c; }
  int32_t v_patient(int32_t i) const { return 1 + 2 * num_categories + i; }
  int32_t w_patient(int32_t i) const { return 1 + 2 * num_categories + num_patients + i; }
};

ChainGraph build_chain_graph(const Instance& instance, const Matching& mu);

/// Finds an alternating chain with positive potential, or nullopt when none
/// exists. Negative cycles are reported as Cycle chains; otherwise the most
/// negative completed path wins, ties broken by lowest endpoint vertex index.
/// Expects a matching that is maximal in resource allocation and complies
/// with eligibility.
std::optional<AlternatingChain> find_positive_chain(const Instance& instance, const Matching& mu);

/// Repeatedly augments positive-potential chains until none remains. The
/// result stays maximal in resource allocation and maximizes the beneficiary
/// count within that class. Vertex-disjoint chains found by one search are
/// augmented together.
Matching max_in_max(const Instance& instance, const Matching& mu1);

}  // namespace resmatch
