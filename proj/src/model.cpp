#include "resmatch/model.hpp"

#include <algorithm>
#include <limits>

namespace resmatch {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateId: return "DUPLICATE_ID";
    case Errc::MissingThreshold: return "MISSING_THRESHOLD";
    case Errc::ThresholdOrder: return "THRESHOLD_ORDER";
    case Errc::UnknownPatient: return "UNKNOWN_PATIENT";
    case Errc::UnknownCategory: return "UNKNOWN_CATEGORY";
    case Errc::BadReserve: return "BAD_RESERVE";
    case Errc::CapacityExceeded: return "CAPACITY_EXCEEDED";
    case Errc::UndefinedComparison: return "UNDEFINED_COMPARISON";
    case Errc::InvalidChain: return "INVALID_CHAIN";
    case Errc::TooLarge: return "TOO_LARGE";
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::BadSpec: return "BAD_SPEC";
  }
  return "UNKNOWN";
}

const char* violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Ineligible: return "INELIGIBLE";
    case Violation::Waste: return "WASTE";
    case Violation::Priority: return "PRIORITY";
  }
  return "UNKNOWN";
}

std::optional<int32_t> Instance::patient_index(std::string_view id) const {
  auto it = patient_index_.find(std::string(id));
  return it == patient_index_.end() ? std::nullopt : std::optional<int32_t>(it->second);
}

std::optional<int32_t> Instance::category_index(std::string_view id) const {
  auto it = category_index_.find(std::string(id));
  return it == category_index_.end() ? std::nullopt : std::optional<int32_t>(it->second);
}

namespace {

PriorityOrder build_priority(const RawCategory& raw, const Instance& instance,
                             const std::unordered_map<std::string, int32_t>& patient_index) {
  PriorityOrder order;
  order.rank.assign(instance.patients().size(), kOmittedRank);
  int32_t beta_count = 0;
  int32_t eta_count = 0;
  for (const std::string& token : raw.priority) {
    int32_t pos = static_cast<int32_t>(order.ranking.size());
    if (token == kBetaMarker) {
      ++beta_count;
      order.beta_pos = pos;
      order.ranking.push_back(kBetaToken);
    } else if (token == kEtaMarker) {
      ++eta_count;
      order.eta_pos = pos;
      order.ranking.push_back(kEtaToken);
    } else {
      auto it = patient_index.find(token);
      if (it == patient_index.end())
        fail(Errc::UnknownPatient, "category " + raw.id + " ranks unknown patient " + token);
      if (order.rank[it->second] != kOmittedRank)
        fail(Errc::DuplicateId, "category " + raw.id + " ranks patient " + token + " twice");
      order.rank[it->second] = pos;
      order.ranking.push_back(it->second);
    }
  }
  if (beta_count != 1 || eta_count != 1)
    fail(Errc::MissingThreshold,
         "category " + raw.id + " must contain each of " + kBetaMarker + " and " + kEtaMarker +
             " exactly once");
  if (order.beta_pos > order.eta_pos)
    fail(Errc::ThresholdOrder, "category " + raw.id + " places " + kEtaMarker + " before " +
                                   kBetaMarker);
  for (int32_t i = 0; i < static_cast<int32_t>(instance.patients().size()); ++i) {
    if (order.rank[i] < order.beta_pos) order.beneficiaries.push_back(i);
    if (order.rank[i] < order.eta_pos) order.eligibles.push_back(i);
  }
  return order;
}

}  // namespace

Instance validate_instance(const RawInstance& raw) {
  Instance instance;
  instance.patients_ = raw.patients;
  for (int32_t i = 0; i < static_cast<int32_t>(raw.patients.size()); ++i) {
    const std::string& id = raw.patients[i];
    if (id == kBetaMarker || id == kEtaMarker)
      fail(Errc::ParseError, "patient id collides with reserved marker " + id);
    if (!instance.patient_index_.emplace(id, i).second)
      fail(Errc::DuplicateId, "duplicate patient id " + id);
  }
  for (int32_t c = 0; c < static_cast<int32_t>(raw.categories.size()); ++c) {
    const RawCategory& raw_cat = raw.categories[c];
    if (!instance.category_index_.emplace(raw_cat.id, c).second)
      fail(Errc::DuplicateId, "duplicate category id " + raw_cat.id);
    if (raw_cat.reserve < 1 || raw_cat.reserve > std::numeric_limits<int32_t>::max())
      fail(Errc::BadReserve,
           "category " + raw_cat.id + " has reserve " + std::to_string(raw_cat.reserve));
    Category category;
    category.id = raw_cat.id;
    category.reserve = static_cast<int32_t>(raw_cat.reserve);
    category.priority = build_priority(raw_cat, instance, instance.patient_index_);
    instance.total_supply_ += category.reserve;
    instance.categories_.push_back(std::move(category));
  }
  return instance;
}

Matching empty_matching(const Instance& instance) {
  Matching mu;
  mu.to_category.assign(instance.num_patients(), kUnmatched);
  return mu;
}

Matching matching_from_pairs(const Instance& instance,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
  Matching mu = empty_matching(instance);
  std::vector<int32_t> fills(instance.num_categories(), 0);
  for (const auto& [patient_id, category_id] : pairs) {
    auto patient = instance.patient_index(patient_id);
    if (!patient) fail(Errc::UnknownPatient, "matching references unknown patient " + patient_id);
    auto category = instance.category_index(category_id);
    if (!category)
      fail(Errc::UnknownCategory, "matching references unknown category " + category_id);
    if (mu.to_category[*patient] != kUnmatched)
      fail(Errc::DuplicateId, "matching assigns patient " + patient_id + " twice");
    mu.to_category[*patient] = *category;
    if (++fills[*category] > instance.category(*category).reserve)
      fail(Errc::CapacityExceeded, "category " + category_id + " exceeds reserve " +
                                       std::to_string(instance.category(*category).reserve));
  }
  return mu;
}

std::vector<int32_t> fill_counts(const Instance& instance, const Matching& mu) {
  std::vector<int32_t> fills(instance.num_categories(), 0);
  for (int32_t c : mu.to_category)
    if (c != kUnmatched) ++fills[c];
  return fills;
}

MatchingStats matching_stats(const Instance& instance, const Matching& mu) {
  MatchingStats stats;
  for (int32_t i = 0; i < instance.num_patients(); ++i) {
    int32_t c = mu.to_category[i];
    if (c == kUnmatched) continue;
    ++stats.assigned;
    if (instance.category(c).priority.is_beneficiary(i)) ++stats.beneficiary_assigned;
  }
  return stats;
}

std::vector<Violation> check_eligibility(const Instance& instance, const Matching& mu) {
  std::vector<Violation> out;
  for (int32_t i = 0; i < instance.num_patients(); ++i) {
    int32_t c = mu.to_category[i];
    if (c != kUnmatched && !instance.category(c).priority.is_eligible(i))
      out.push_back({Violation::Ineligible, i, c});
  }
  return out;
}

std::vector<Violation> check_nonwasteful(const Instance& instance, const Matching& mu) {
  std::vector<Violation> out;
  std::vector<int32_t> fills = fill_counts(instance, mu);
  for (int32_t c = 0; c < instance.num_categories(); ++c) {
    if (fills[c] >= instance.category(c).reserve) continue;
    for (int32_t i : instance.category(c).priority.eligibles)
      if (mu.to_category[i] == kUnmatched) out.push_back({Violation::Waste, i, c});
  }
  return out;
}

std::vector<Violation> check_respects_priorities(const Instance& instance, const Matching& mu) {
  std::vector<Violation> out;
  std::vector<int32_t> unmatched;
  for (int32_t i = 0; i < instance.num_patients(); ++i)
    if (mu.to_category[i] == kUnmatched) unmatched.push_back(i);
  if (unmatched.empty()) return out;
  for (int32_t i = 0; i < instance.num_patients(); ++i) {
    int32_t c = mu.to_category[i];
    if (c == kUnmatched) continue;
    const PriorityOrder& order = instance.category(c).priority;
    for (int32_t other : unmatched) {
      // Two omitted patients are incomparable, which fails the requirement too.
      bool precedes = order.rank[i] != kOmittedRank && order.rank[i] < order.rank[other];
      if (!precedes) out.push_back({Violation::Priority, i, c, other});
    }
  }
  return out;
}

namespace {

int32_t token_position(const Instance& instance, int32_t category, int32_t token) {
  const PriorityOrder& order = instance.category(category).priority;
  if (token == kBetaToken) return order.beta_pos;
  if (token == kEtaToken) return order.eta_pos;
  return order.rank[token];
}

}  // namespace

bool compare(const Instance& instance, int32_t category, int32_t token_a, int32_t token_b) {
  int32_t pos_a = token_position(instance, category, token_a);
  int32_t pos_b = token_position(instance, category, token_b);
  if (pos_a == kOmittedRank && pos_b == kOmittedRank)
    fail(Errc::UndefinedComparison,
         "both tokens are omitted from the ranking of " + instance.category(category).id);
  return pos_a < pos_b;
}

bool compare(const Instance& instance, std::string_view category_id, std::string_view token_a,
             std::string_view token_b) {
  auto category = instance.category_index(category_id);
  if (!category) fail(Errc::UnknownCategory, "unknown category " + std::string(category_id));
  auto resolve = [&](std::string_view token) -> int32_t {
    if (token == kBetaMarker) return kBetaToken;
    if (token == kEtaMarker) return kEtaToken;
    auto patient = instance.patient_index(token);
    if (!patient) fail(Errc::UnknownPatient, "unknown patient " + std::string(token));
    return *patient;
  };
  return compare(instance, *category, resolve(token_a), resolve(token_b));
}

}  // namespace resmatch
