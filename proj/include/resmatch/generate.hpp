#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resmatch/model.hpp"
#include "resmatch/rng.hpp"

namespace resmatch {

/// Named instances: "example1" (two patients, one beneficiary-less category),
/// "example2" (two patients with crossed beneficiary thresholds), "example3"
/// (two patients competing for a single reserved unit), and "pandemic"
/// (healthcare / elderly / general-public categories at a one-per-million
/// scale of the US population: reserves 5/5/40 over 328 patients).
Instance preset_instance(const std::string& name);

std::vector<std::string> preset_names();

/// Parameters for the seeded random instance generator. Per category, each
/// patient is listed with probability list_fraction; the beta marker lands
/// uniformly in the first beta_max_frac share of the list and the eta marker
/// uniformly between the beta position and the end, no earlier than the
/// eta_min_frac share.
struct RandomSpec {
  int64_t patients = 6;
  int64_t categories = 3;
  int64_t reserve_min = 1;
  int64_t reserve_max = 3;
  int64_t supply_cap = 0;  // 0 = unlimited; otherwise reserves are resampled until the sum fits
  double list_fraction = 0.8;
  double beta_max_frac = 0.5;
  double eta_min_frac = 0.0;
};

/// Deterministic under (spec, seed). Throws BAD_SPEC on out-of-range fields.
Instance generate_random(const RandomSpec& spec, uint64_t seed);

/// Seeded instance satisfying the possibility premise: every category's
/// beneficiary set is at least min(supply, |C| * reserve), rejection-sampled
/// against the computed report until the premise holds.
Instance generate_premise_instance(uint64_t seed);

/// Random eligibility-compliant, capacity-feasible matching; roughly half of
/// the patients stay unmatched.
Matching random_compliant_matching(const Instance& instance, Rng& rng);

}  // namespace resmatch
