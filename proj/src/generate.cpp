#include "resmatch/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resmatch/oracle.hpp"

namespace resmatch {

namespace {

RawCategory make_category(std::string id, int64_t reserve, std::vector<std::string> priority) {
  RawCategory category;
  category.id = std::move(id);
  category.reserve = reserve;
  category.priority = std::move(priority);
  return category;
}

Instance make_example1() {
  RawInstance raw;
  raw.patients = {"i1", "i2"};
  raw.categories.push_back(make_category("c1", 1, {"i1", kBetaMarker, "i2", kEtaMarker}));
  raw.categories.push_back(make_category("c2", 1, {kBetaMarker, "i1", kEtaMarker, "i2"}));
  return validate_instance(raw);
}

Instance make_example2() {
  RawInstance raw;
  raw.patients = {"i1", "i2"};
  raw.categories.push_back(make_category("c1", 1, {"i1", kBetaMarker, "i2", kEtaMarker}));
  raw.categories.push_back(make_category("c2", 1, {"i2", kBetaMarker, "i1", kEtaMarker}));
  return validate_instance(raw);
}

Instance make_example3() {
  RawInstance raw;
  raw.patients = {"i1", "i2"};
  raw.categories.push_back(make_category("c", 1, {"i1", "i2", kBetaMarker, kEtaMarker}));
  return validate_instance(raw);
}

Instance make_pandemic() {
  RawInstance raw;
  std::vector<std::string> healthcare, elderly, general;
  for (int i = 1; i <= 22; ++i) healthcare.push_back("h" + std::to_string(i));
  for (int i = 1; i <= 54; ++i) elderly.push_back("e" + std::to_string(i));
  for (int i = 1; i <= 252; ++i) general.push_back("g" + std::to_string(i));
  raw.patients = healthcare;
  raw.patients.insert(raw.patients.end(), elderly.begin(), elderly.end());
  raw.patients.insert(raw.patients.end(), general.begin(), general.end());

  auto ranked = [&](const std::vector<std::string>& beneficiaries) {
    std::vector<std::string> priority = beneficiaries;
    priority.push_back(kBetaMarker);
    for (const std::string& id : raw.patients)
      if (std::find(beneficiaries.begin(), beneficiaries.end(), id) == beneficiaries.end())
        priority.push_back(id);
    priority.push_back(kEtaMarker);
    return priority;
  };
  raw.categories.push_back(make_category("c_h", 5, ranked(healthcare)));
  raw.categories.push_back(make_category("c_e", 5, ranked(elderly)));
  raw.categories.push_back(make_category("c_g", 40, ranked(general)));
  return validate_instance(raw);
}

}  // namespace

std::vector<std::string> preset_names() { return {"example1", "example2", "example3", "pandemic"}; }

Instance preset_instance(const std::string& name) {
  if (name == "example1") return make_example1();
  if (name == "example2") return make_example2();
  if (name == "example3") return make_example3();
  if (name == "pandemic") return make_pandemic();
  fail(Errc::BadSpec, "unknown preset " + name);
}

Instance generate_random(const RandomSpec& spec, uint64_t seed) {
  if (spec.patients < 0 || spec.categories < 0)
    fail(Errc::BadSpec, "patient and category counts must be non-negative");
  if (spec.reserve_min < 1 || spec.reserve_max < spec.reserve_min)
    fail(Errc::BadSpec, "need 1 <= reserve_min <= reserve_max");
  if (spec.supply_cap != 0 && spec.supply_cap < spec.categories * spec.reserve_min)
    fail(Errc::BadSpec, "supply_cap is below categories * reserve_min");
  if (spec.list_fraction < 0.0 || spec.list_fraction > 1.0)
    fail(Errc::BadSpec, "list_fraction must lie in [0, 1]");
  if (spec.beta_max_frac < 0.0 || spec.beta_max_frac > 1.0 || spec.eta_min_frac < 0.0 ||
      spec.eta_min_frac > 1.0)
    fail(Errc::BadSpec, "threshold fractions must lie in [0, 1]");

  Rng rng(seed);
  RawInstance raw;
  for (int64_t i = 1; i <= spec.patients; ++i) raw.patients.push_back("i" + std::to_string(i));

  std::vector<int64_t> reserves(spec.categories);
  do {
    for (int64_t& r : reserves) r = rng.range(spec.reserve_min, spec.reserve_max);
  } while (spec.supply_cap != 0 &&
           std::accumulate(reserves.begin(), reserves.end(), int64_t{0}) > spec.supply_cap);

  for (int64_t c = 0; c < spec.categories; ++c) {
    std::vector<std::string> listed;
    for (const std::string& id : raw.patients)
      if (rng.chance(spec.list_fraction)) listed.push_back(id);
    rng.shuffle(listed);
    const int64_t len = static_cast<int64_t>(listed.size());
    int64_t beta_pos = rng.range(0, static_cast<int64_t>(std::floor(len * spec.beta_max_frac)));
    int64_t eta_low = std::max(beta_pos, static_cast<int64_t>(std::floor(len * spec.eta_min_frac)));
    int64_t eta_pos = rng.range(eta_low, len);
    std::vector<std::string> priority;
    for (int64_t k = 0; k <= len; ++k) {
      if (k == beta_pos) priority.push_back(kBetaMarker);
      if (k == eta_pos) priority.push_back(kEtaMarker);
      if (k < len) priority.push_back(listed[k]);
    }
    raw.categories.push_back(
        make_category("c" + std::to_string(c + 1), reserves[c], std::move(priority)));
  }
  return validate_instance(raw);
}

Instance generate_premise_instance(uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int64_t num_categories = rng.range(1, 3);
    std::vector<int64_t> reserves(num_categories);
    int64_t supply = 0;
    for (int64_t& r : reserves) supply += (r = rng.range(1, 3));

    const int64_t num_patients = supply + rng.range(0, 5);
    RawInstance raw;
    for (int64_t i = 1; i <= num_patients; ++i) raw.patients.push_back("i" + std::to_string(i));
    for (int64_t c = 0; c < num_categories; ++c) {
      int64_t quota = std::min(num_patients,
                               std::min(supply, num_categories * reserves[c]) + rng.range(0, 2));
      std::vector<std::string> pool = raw.patients;
      rng.shuffle(pool);
      std::vector<std::string> priority(pool.begin(), pool.begin() + quota);
      priority.push_back(kBetaMarker);
      priority.insert(priority.end(), pool.begin() + quota, pool.end());
      priority.push_back(kEtaMarker);
      raw.categories.push_back(
          make_category("c" + std::to_string(c + 1), reserves[c], std::move(priority)));
    }
    Instance instance = validate_instance(raw);
    if (hall_check(instance).premise_holds) return instance;
  }
  fail(Errc::BadSpec, "premise-satisfying generation did not converge");
}

Matching random_compliant_matching(const Instance& instance, Rng& rng) {
  Matching mu = empty_matching(instance);
  std::vector<int32_t> remaining(instance.num_categories());
  for (int32_t c = 0; c < instance.num_categories(); ++c)
    remaining[c] = instance.category(c).reserve;
  std::vector<int32_t> order(instance.num_patients());
  for (int32_t i = 0; i < instance.num_patients(); ++i) order[i] = i;
  rng.shuffle(order);
  for (int32_t i : order) {
    if (rng.chance(0.5)) continue;
    std::vector<int32_t> options;
    for (int32_t c = 0; c < instance.num_categories(); ++c)
      if (remaining[c] > 0 && instance.category(c).priority.is_eligible(i)) options.push_back(c);
    if (options.empty()) continue;
    int32_t c = options[rng.below(options.size())];
    mu.to_category[i] = c;
    --remaining[c];
  }
  return mu;
}

}  // namespace resmatch
