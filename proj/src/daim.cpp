#include "resmatch/daim.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace resmatch {

PrecedenceOrder default_precedence(const Instance& instance) {
  PrecedenceOrder order(instance.num_categories());
  for (int32_t c = 0; c < instance.num_categories(); ++c) order[c] = c;
  return order;
}

PrecedenceOrder parse_precedence(const Instance& instance, const std::string& csv) {
  PrecedenceOrder order;
  std::vector<uint8_t> seen(instance.num_categories(), 0);
  std::stringstream stream(csv);
  std::string id;
  while (std::getline(stream, id, ',')) {
    if (id.empty()) continue;
    auto c = instance.category_index(id);
    if (!c) fail(Errc::BadSpec, "precedence names unknown category " + id);
    if (seen[*c]) fail(Errc::BadSpec, "precedence repeats category " + id);
    seen[*c] = 1;
    order.push_back(*c);
  }
  if (static_cast<int32_t>(order.size()) != instance.num_categories())
    fail(Errc::BadSpec, "precedence must list every category exactly once");
  return order;
}

HypotheticalMarket build_hypothetical_market(const Instance& instance, const Matching& initial,
                                             const PrecedenceOrder& precedence) {
  HypotheticalMarket market;
  market.dummy_category = instance.num_categories();
  market.patient_prefs.resize(instance.num_patients());
  for (int32_t i = 0; i < instance.num_patients(); ++i) {
    std::vector<int32_t>& prefs = market.patient_prefs[i];
    int32_t current = initial.to_category[i];
    if (current == kUnmatched) {
      prefs.push_back(market.dummy_category);
      prefs.insert(prefs.end(), precedence.begin(), precedence.end());
    } else {
      prefs.push_back(current);
      for (int32_t c : precedence)
        if (c != current) prefs.push_back(c);
    }
  }
  return market;
}

Matching run_daim(const Instance& instance, const Matching& initial,
                  const PrecedenceOrder& precedence) {
  if (!check_eligibility(instance, initial).empty())
    throw std::invalid_argument("run_daim initial matching must comply with eligibility");
  HypotheticalMarket market = build_hypothetical_market(instance, initial, precedence);

  // held[c] keeps the tentatively accepted patients ordered by priority rank.
  std::vector<std::set<std::pair<int32_t, int32_t>>> held(instance.num_categories());
  std::vector<int32_t> next_choice(instance.num_patients(), 0);
  std::vector<int32_t> proposers;
  for (int32_t i = 0; i < instance.num_patients(); ++i) proposers.push_back(i);

  std::vector<int32_t> rejected;
  while (!proposers.empty()) {
    rejected.clear();
    for (int32_t i : proposers) {
      const std::vector<int32_t>& prefs = market.patient_prefs[i];
      if (next_choice[i] >= static_cast<int32_t>(prefs.size())) continue;  // stays unassigned
      int32_t c = prefs[next_choice[i]];
      ++next_choice[i];
      if (c == market.dummy_category) {  // no reserve: rejects everyone
        rejected.push_back(i);
        continue;
      }
      const PriorityOrder& order = instance.category(c).priority;
      if (!order.is_eligible(i)) {  // unacceptable to the category
        rejected.push_back(i);
        continue;
      }
      held[c].insert({order.rank[i], i});
      if (static_cast<int32_t>(held[c].size()) > instance.category(c).reserve) {
        auto worst = std::prev(held[c].end());
        rejected.push_back(worst->second);
        held[c].erase(worst);
      }
    }
    proposers.swap(rejected);
    std::sort(proposers.begin(), proposers.end());
  }

  Matching result = empty_matching(instance);
  for (int32_t c = 0; c < instance.num_categories(); ++c)
    for (const auto& [rank, patient] : held[c]) result.to_category[patient] = c;
  return result;
}

}  // namespace resmatch
