#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "resmatch/generate.hpp"
#include "resmatch/model.hpp"

namespace test {

inline resmatch::RawCategory raw_category(const char* id, int64_t reserve,
                                          std::vector<std::string> priority) {
  resmatch::RawCategory category;
  category.id = id;
  category.reserve = reserve;
  category.priority = std::move(priority);
  return category;
}

/// Matching literal by ids: match(inst, {{"i1", "c2"}, ...}).
inline resmatch::Matching match(const resmatch::Instance& instance,
                                std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<std::pair<std::string, std::string>> by_id;
  for (const auto& [patient, category] : pairs) by_id.emplace_back(patient, category);
  return resmatch::matching_from_pairs(instance, by_id);
}

/// Small corpus spec mirroring the acceptance corpus shape.
inline resmatch::Instance small_random_instance(uint64_t seed, int64_t max_patients = 7) {
  resmatch::Rng pick(seed * 2654435761u + 17);
  resmatch::RandomSpec spec;
  spec.patients = pick.range(1, max_patients);
  spec.categories = pick.range(1, 4);
  spec.reserve_min = 1;
  spec.reserve_max = 3;
  spec.supply_cap = 6;
  spec.list_fraction = 0.4 + 0.6 * (seed % 7) / 6.0;
  spec.beta_max_frac = 0.7;
  spec.eta_min_frac = 0.0;
  return resmatch::generate_random(spec, seed);
}

}  // namespace test
