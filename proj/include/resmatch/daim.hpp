#pragma once

#include <cstdint>
#include <vector>

#include "resmatch/model.hpp"

namespace resmatch {

/// Order in which categories enter the synthetic patient preference lists.
/// Must be a permutation of the instance's categories.
using PrecedenceOrder = std::vector<int32_t>;

PrecedenceOrder default_precedence(const Instance& instance);

/// Parses a comma-separated list of category ids; throws BAD_SPEC unless it
/// is a permutation of the instance's categories.
PrecedenceOrder parse_precedence(const Instance& instance, const std::string& csv);

/// Two-sided market synthesized from an initial matching. The dummy category
/// (index = num_categories) has capacity zero, so it rejects everyone; it
/// heads the list of every initially unmatched patient. A patient matched to
/// c lists c first and the remaining categories in precedence order. A
/// category finds a patient acceptable exactly when the patient is eligible,
/// and compares acceptable patients by its priority order.
struct HypotheticalMarket {
  int32_t dummy_category = 0;
  std::vector<std::vector<int32_t>> patient_prefs;
};

HypotheticalMarket build_hypothetical_market(const Instance& instance, const Matching& initial,
                                             const PrecedenceOrder& precedence);

/// Patient-proposing deferred acceptance seeded by the initial matching.
/// Rounds are simultaneous; every rejected patient proposes to the next list
/// entry in the same round batch. The initial matching must comply with
/// eligibility requirements. The result respects priorities, and per
/// category both the assigned count and every priority-prefix count weakly
/// increase relative to the initial matching.
Matching run_daim(const Instance& instance, const Matching& initial,
                  const PrecedenceOrder& precedence);

}  // namespace resmatch
