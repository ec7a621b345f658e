#include "resmatch.h"

#include <cstring>
#include <json.hpp>
#include <new>
#include <stdexcept>
#include <string>

#include "resmatch/chains.hpp"
#include "resmatch/generate.hpp"
#include "resmatch/json_io.hpp"
#include "resmatch/model.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/pipeline.hpp"
#include "resmatch/slot_graph.hpp"

using nlohmann::json;

struct rsm_instance {
  resmatch::Instance value;
};

struct rsm_matching {
  resmatch::Matching value;
};

struct rsm_result {
  resmatch::PipelineResult value;
};

namespace {

thread_local std::string g_last_error;

int map_errc(resmatch::Errc code) {
  using resmatch::Errc;
  switch (code) {
    case Errc::DuplicateId: return RSM_ERR_DUPLICATE_ID;
    case Errc::MissingThreshold: return RSM_ERR_MISSING_THRESHOLD;
    case Errc::ThresholdOrder: return RSM_ERR_THRESHOLD_ORDER;
    case Errc::UnknownPatient: return RSM_ERR_UNKNOWN_PATIENT;
    case Errc::UnknownCategory: return RSM_ERR_UNKNOWN_CATEGORY;
    case Errc::BadReserve: return RSM_ERR_BAD_RESERVE;
    case Errc::CapacityExceeded: return RSM_ERR_CAPACITY_EXCEEDED;
    case Errc::UndefinedComparison: return RSM_ERR_UNDEFINED_COMPARISON;
    case Errc::InvalidChain: return RSM_ERR_INVALID_CHAIN;
    case Errc::TooLarge: return RSM_ERR_TOO_LARGE;
    case Errc::ParseError: return RSM_ERR_PARSE;
    case Errc::BadSpec: return RSM_ERR_BAD_SPEC;
  }
  return RSM_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RSM_OK;
  } catch (const resmatch::Error& err) {
    g_last_error = err.what();
    return map_errc(err.code());
  } catch (const std::invalid_argument& err) {
    g_last_error = err.what();
    return RSM_ERR_BAD_ARG;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return RSM_ERR_INTERNAL;
  }
}

int require_arg(bool ok) {
  if (!ok) {
    g_last_error = "null argument";
    return RSM_ERR_BAD_ARG;
  }
  return RSM_OK;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

json violations_to_json(const resmatch::Instance& instance,
                        const std::vector<resmatch::Violation>& violations) {
  json out = json::array();
  for (const resmatch::Violation& v : violations) {
    json entry = {{"kind", resmatch::violation_kind_name(v.kind)},
                  {"patient", instance.patient_id(v.patient)},
                  {"category", instance.category(v.category).id}};
    if (v.co_patient != resmatch::kUnmatched)
      entry["co_patient"] = instance.patient_id(v.co_patient);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

extern "C" {

const char* rsm_version(void) { return "1.0.0"; }

const char* rsm_last_error(void) { return g_last_error.c_str(); }

void rsm_string_free(char* text) { delete[] text; }

int rsm_instance_parse(const char* json_text, rsm_instance** out) {
  if (int rc = require_arg(json_text && out)) return rc;
  return guarded([&] { *out = new rsm_instance{resmatch::parse_instance(json_text)}; });
}

int rsm_instance_preset(const char* name, rsm_instance** out) {
  if (int rc = require_arg(name && out)) return rc;
  return guarded([&] { *out = new rsm_instance{resmatch::preset_instance(name)}; });
}

int rsm_instance_random(const char* spec_json, uint64_t seed, rsm_instance** out) {
  if (int rc = require_arg(out)) return rc;
  return guarded([&] {
    resmatch::RandomSpec spec;
    if (spec_json && *spec_json) {
      json doc = json::parse(spec_json, nullptr, false);
      if (doc.is_discarded()) resmatch::fail(resmatch::Errc::ParseError, "malformed spec JSON");
      spec.patients = doc.value("patients", spec.patients);
      spec.categories = doc.value("categories", spec.categories);
      spec.reserve_min = doc.value("reserve_min", spec.reserve_min);
      spec.reserve_max = doc.value("reserve_max", spec.reserve_max);
      spec.supply_cap = doc.value("supply_cap", spec.supply_cap);
      spec.list_fraction = doc.value("list_fraction", spec.list_fraction);
      spec.beta_max_frac = doc.value("beta_max_frac", spec.beta_max_frac);
      spec.eta_min_frac = doc.value("eta_min_frac", spec.eta_min_frac);
    }
    *out = new rsm_instance{resmatch::generate_random(spec, seed)};
  });
}

int rsm_instance_to_json(const rsm_instance* instance, char** out_text) {
  if (int rc = require_arg(instance && out_text)) return rc;
  return guarded([&] { *out_text = copy_string(resmatch::serialize_instance(instance->value)); });
}

int rsm_instance_counts(const rsm_instance* instance, int64_t* patients, int64_t* categories,
                        int64_t* supply) {
  if (int rc = require_arg(instance != nullptr)) return rc;
  if (patients) *patients = instance->value.num_patients();
  if (categories) *categories = instance->value.num_categories();
  if (supply) *supply = instance->value.total_supply();
  return RSM_OK;
}

void rsm_instance_free(rsm_instance* instance) { delete instance; }

int rsm_matching_parse(const rsm_instance* instance, const char* json_text, rsm_matching** out) {
  if (int rc = require_arg(instance && json_text && out)) return rc;
  return guarded(
      [&] { *out = new rsm_matching{resmatch::parse_matching(instance->value, json_text)}; });
}

int rsm_matching_to_json(const rsm_instance* instance, const rsm_matching* mu, char** out_text) {
  if (int rc = require_arg(instance && mu && out_text)) return rc;
  return guarded(
      [&] { *out_text = copy_string(resmatch::serialize_matching(instance->value, mu->value)); });
}

int rsm_matching_stats(const rsm_instance* instance, const rsm_matching* mu, int64_t* assigned,
                       int64_t* beneficiary) {
  if (int rc = require_arg(instance && mu)) return rc;
  return guarded([&] {
    resmatch::MatchingStats stats = resmatch::matching_stats(instance->value, mu->value);
    if (assigned) *assigned = stats.assigned;
    if (beneficiary) *beneficiary = stats.beneficiary_assigned;
  });
}

void rsm_matching_free(rsm_matching* mu) { delete mu; }

int rsm_solve(const rsm_instance* instance, const char* precedence_csv, rsm_result** out) {
  if (int rc = require_arg(instance && out)) return rc;
  return guarded([&] {
    std::optional<resmatch::PrecedenceOrder> precedence;
    if (precedence_csv && *precedence_csv)
      precedence = resmatch::parse_precedence(instance->value, precedence_csv);
    *out = new rsm_result{resmatch::smart_pipeline(instance->value, precedence)};
  });
}

int rsm_result_matching(const rsm_result* result, int stage, rsm_matching** out) {
  if (int rc = require_arg(result && out)) return rc;
  if (stage < 1 || stage > 3) {
    g_last_error = "stage must be 1, 2 or 3";
    return RSM_ERR_BAD_ARG;
  }
  const resmatch::Matching& mu = stage == 1   ? result->value.mu1
                                 : stage == 2 ? result->value.mu2
                                              : result->value.mu3;
  *out = new rsm_matching{mu};
  return RSM_OK;
}

void rsm_result_free(rsm_result* result) { delete result; }

int rsm_daim(const rsm_instance* instance, const rsm_matching* initial,
             const char* precedence_csv, rsm_matching** out) {
  if (int rc = require_arg(instance && out)) return rc;
  return guarded([&] {
    resmatch::PrecedenceOrder precedence = precedence_csv && *precedence_csv
                                               ? resmatch::parse_precedence(instance->value,
                                                                            precedence_csv)
                                               : resmatch::default_precedence(instance->value);
    resmatch::Matching start =
        initial ? initial->value : resmatch::empty_matching(instance->value);
    *out = new rsm_matching{resmatch::run_daim(instance->value, start, precedence)};
  });
}

int rsm_check(const rsm_instance* instance, const rsm_matching* mu, char** report_json) {
  if (int rc = require_arg(instance && mu && report_json)) return rc;
  return guarded([&] {
    const resmatch::Instance& inst = instance->value;
    auto ineligible = resmatch::check_eligibility(inst, mu->value);
    auto waste = resmatch::check_nonwasteful(inst, mu->value);
    auto priority = resmatch::check_respects_priorities(inst, mu->value);
    resmatch::MatchingStats stats = resmatch::matching_stats(inst, mu->value);
    int64_t max_size = resmatch::max_resource_size(inst);
    json report = {
        {"assigned", stats.assigned},
        {"beneficiary", stats.beneficiary_assigned},
        {"eligibility",
         {{"ok", ineligible.empty()}, {"violations", violations_to_json(inst, ineligible)}}},
        {"nonwasteful", {{"ok", waste.empty()}, {"violations", violations_to_json(inst, waste)}}},
        {"priorities",
         {{"ok", priority.empty()}, {"violations", violations_to_json(inst, priority)}}},
        {"max_resource_size", max_size},
        {"pareto_optimal", stats.assigned == max_size},
    };
    *report_json = copy_string(report.dump(2) + "\n");
  });
}

int rsm_oracle(const rsm_instance* instance, int force, char** report_json) {
  if (int rc = require_arg(instance && report_json)) return rc;
  return guarded([&] {
    const resmatch::Instance& inst = instance->value;
    resmatch::EnumerationGuard guard;
    guard.force = force != 0;
    int64_t count = 0;
    resmatch::for_each_matching(inst, guard, [&](const resmatch::Matching&) {
      ++count;
      return true;
    });
    resmatch::MatchingStats lex = resmatch::oracle_max_in_max(inst, guard);
    json report = {
        {"enumerated", count},
        {"enumeration_bound", resmatch::enumeration_bound(inst)},
        {"max_resource", resmatch::oracle_max_resource(inst, guard)},
        {"max_beneficiary", resmatch::oracle_max_beneficiary(inst, guard)},
        {"max_in_max", {{"assigned", lex.assigned}, {"beneficiary", lex.beneficiary_assigned}}},
        {"joint_achievable", resmatch::oracle_joint_achievable(inst, guard)},
        {"pareto_equivalence", resmatch::check_pareto_maximality_equivalence(inst, guard)},
    };
    *report_json = copy_string(report.dump(2) + "\n");
  });
}

int rsm_hall(const rsm_instance* instance, char** report_json) {
  if (int rc = require_arg(instance && report_json)) return rc;
  return guarded([&] {
    const resmatch::Instance& inst = instance->value;
    resmatch::HallReport hall = resmatch::hall_check(inst);
    json sparse = json::array();
    for (int32_t c : hall.sparse) sparse.push_back(inst.category(c).id);
    json report = {
        {"q", inst.total_supply()},
        {"b", hall.b},
        {"sparse", std::move(sparse)},
        {"premise_holds", hall.premise_holds},
        {"all_beneficiary_exists", hall.all_beneficiary_exists},
    };
    *report_json = copy_string(report.dump(2) + "\n");
  });
}

}  // extern "C"
