#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "resmatch/errors.hpp"

namespace resmatch {

constexpr int32_t kUnmatched = -1;

// Token encoding inside a validated ranking: >= 0 is a patient index.
constexpr int32_t kBetaToken = -2;
constexpr int32_t kEtaToken = -3;

// Rank assigned to patients absent from a ranking; sorts below every listed token.
constexpr int32_t kOmittedRank = std::numeric_limits<int32_t>::max();

inline constexpr const char* kBetaMarker = "__BETA__";
inline constexpr const char* kEtaMarker = "__ETA__";

/// Unvalidated instance document, as read from disk or built by a generator.
struct RawCategory {
  std::string id;
  int64_t reserve = 0;
  std::vector<std::string> priority;  // patient ids plus the two marker strings
};

struct RawInstance {
  std::vector<std::string> patients;
  std::vector<RawCategory> categories;
};

/// Strict priority order over patients plus the beta/eta thresholds.
/// Patients missing from the ranking sit below eta and are mutually incomparable.
struct PriorityOrder {
  std::vector<int32_t> ranking;  // patient index, kBetaToken or kEtaToken
  int32_t beta_pos = 0;
  int32_t eta_pos = 0;
  std::vector<int32_t> rank;           // patient index -> position, kOmittedRank if absent
  std::vector<int32_t> beneficiaries;  // ascending patient index
  std::vector<int32_t> eligibles;      // ascending patient index

  bool is_beneficiary(int32_t patient) const { return rank[patient] < beta_pos; }
  bool is_eligible(int32_t patient) const { return rank[patient] < eta_pos; }
  bool is_listed(int32_t patient) const { return rank[patient] != kOmittedRank; }
};

struct Category {
  std::string id;
  int32_t reserve = 0;
  PriorityOrder priority;
};

/// Validated problem instance. Immutable after construction; total supply is
/// always the sum of the category reserves.
class Instance {
 public:
  const std::vector<std::string>& patients() const { return patients_; }
  const std::vector<Category>& categories() const { return categories_; }
  int64_t total_supply() const { return total_supply_; }

  int32_t num_patients() const { return static_cast<int32_t>(patients_.size()); }
  int32_t num_categories() const { return static_cast<int32_t>(categories_.size()); }

  const Category& category(int32_t c) const { return categories_[c]; }
  const std::string& patient_id(int32_t i) const { return patients_[i]; }

  std::optional<int32_t> patient_index(std::string_view id) const;
  std::optional<int32_t> category_index(std::string_view id) const;

 private:
  friend Instance validate_instance(const RawInstance& raw);

  std::vector<std::string> patients_;
  std::vector<Category> categories_;
  int64_t total_supply_ = 0;
  std::unordered_map<std::string, int32_t> patient_index_;
  std::unordered_map<std::string, int32_t> category_index_;
};

/// Checks every model invariant and builds the derived per-category tables.
/// Throws Error with one of: DUPLICATE_ID, MISSING_THRESHOLD, THRESHOLD_ORDER,
/// UNKNOWN_PATIENT, BAD_RESERVE, PARSE_ERROR (marker collision).
Instance validate_instance(const RawInstance& raw);

/// Partial assignment patient -> category, capacity-feasible by construction
/// of the factory helpers below.
struct Matching {
  std::vector<int32_t> to_category;  // patient index -> category index or kUnmatched

  bool operator==(const Matching& other) const = default;

  int32_t at(int32_t patient) const { return to_category[patient]; }
  bool is_matched(int32_t patient) const { return to_category[patient] != kUnmatched; }
};

/// All-unmatched matching for the instance.
Matching empty_matching(const Instance& instance);

/// Builds a matching from (patient id, category id) pairs, enforcing the
/// referencing and capacity invariants (UNKNOWN_PATIENT, UNKNOWN_CATEGORY,
/// DUPLICATE_ID, CAPACITY_EXCEEDED).
Matching matching_from_pairs(const Instance& instance,
                             const std::vector<std::pair<std::string, std::string>>& pairs);

/// Number of patients assigned to each category.
std::vector<int32_t> fill_counts(const Instance& instance, const Matching& mu);

struct MatchingStats {
  int64_t assigned = 0;
  int64_t beneficiary_assigned = 0;

  bool operator==(const MatchingStats& other) const = default;
};

/// assigned = |I_mu|; beneficiary_assigned counts patients matched to a
/// category of which they are a beneficiary.
MatchingStats matching_stats(const Instance& instance, const Matching& mu);

struct Violation {
  enum Kind : uint8_t { Ineligible, Waste, Priority };
  Kind kind;
  int32_t patient;
  int32_t category;
  int32_t co_patient = kUnmatched;  // set for Priority: the overlooked unmatched patient

  bool operator==(const Violation& other) const = default;
};

const char* violation_kind_name(Violation::Kind kind);

/// One INELIGIBLE witness per assignment to a category the patient is not eligible for.
std::vector<Violation> check_eligibility(const Instance& instance, const Matching& mu);

/// One WASTE witness per (unmatched eligible patient, under-filled category) pair.
std::vector<Violation> check_nonwasteful(const Instance& instance, const Matching& mu);

/// One PRIORITY witness per (matched patient, unmatched patient, category)
/// triple where the unmatched patient does not rank strictly below the matched one.
std::vector<Violation> check_respects_priorities(const Instance& instance, const Matching& mu);

/// Strict comparison a pi_c b between ranking tokens (patient ids or markers).
/// Omitted patients rank below eta; comparing two omitted patients throws
/// UNDEFINED_COMPARISON.
bool compare(const Instance& instance, int32_t category, int32_t token_a, int32_t token_b);
bool compare(const Instance& instance, std::string_view category_id, std::string_view token_a,
             std::string_view token_b);

}  // namespace resmatch
