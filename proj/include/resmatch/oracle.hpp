#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "resmatch/model.hpp"

namespace resmatch {

/// Size limits for the exhaustive oracles. Enumeration refuses instances
/// past the limits unless force is set; the theoretical matching count grows
/// like (|C|+1)^|I|.
struct EnumerationGuard {
  int32_t max_patients = 10;
  int64_t max_supply = 10;
  bool force = false;
};

/// Upper bound (|C|+1)^|I| on the number of matchings, saturated.
double enumeration_bound(const Instance& instance);

/// Calls the visitor once per eligibility-compliant, capacity-feasible
/// matching; stops early when the visitor returns false. Throws TOO_LARGE
/// when the guard trips.
void for_each_matching(const Instance& instance, const EnumerationGuard& guard,
                       const std::function<bool(const Matching&)>& visit);

std::vector<Matching> enumerate_matchings(const Instance& instance,
                                          const EnumerationGuard& guard = {});

int64_t oracle_max_resource(const Instance& instance, const EnumerationGuard& guard = {});
int64_t oracle_max_beneficiary(const Instance& instance, const EnumerationGuard& guard = {});

/// Lexicographic optimum: the best beneficiary count among matchings of
/// maximum size, returned as (assigned, beneficiary_assigned).
MatchingStats oracle_max_in_max(const Instance& instance, const EnumerationGuard& guard = {});

/// True when some enumerated matching attains the resource and beneficiary
/// maxima simultaneously.
bool oracle_joint_achievable(const Instance& instance, const EnumerationGuard& guard = {});

/// Exhaustive Pareto check: no enumerated matching matches a strict superset
/// of the patients this one matches.
bool is_pareto_optimal_bruteforce(const Instance& instance, const Matching& mu,
                                  const EnumerationGuard& guard = {});

/// Verifies on the whole enumeration that Pareto optimality coincides with
/// attaining the maximum assigned count.
bool check_pareto_maximality_equivalence(const Instance& instance, const EnumerationGuard& guard = {});

struct HallReport {
  int64_t b = 0;                 // max sparse-category beneficiary memberships per patient
  std::vector<int32_t> sparse;   // categories with fewer beneficiaries than the total supply
  bool premise_holds = false;    // every |B_c| >= min(q, max(b,1) * r_c)
  bool all_beneficiary_exists = false;  // a matching can hand every unit to a beneficiary
};

/// Possibility check: the premise fields come from counting, the conclusion
/// from a maximum matching on the beneficiary-only slot graph.
HallReport hall_check(const Instance& instance);

/// Connected components of the symmetric difference of two matchings on the
/// slot-expanded graph. Slots are assigned canonically per category: patients
/// matched in both take the lowest slots (in patient order), so an agreeing
/// assignment never produces an artificial component.
struct ChainDecomposition {
  enum Kind : uint8_t { Isolated, Neutral, Incremental, Decremental };

  struct Component {
    Kind kind;
    bool is_cycle = false;
    int32_t edges_first = 0;   // edges contributed by the first matching
    int32_t edges_second = 0;  // edges contributed by the second matching
    int64_t potential = 0;     // beneficiary count of second-edges minus first-edges
  };

  std::vector<Component> components;  // isolated vertices included
  int64_t isolated_count = 0;
  int64_t neutral_count = 0;
  int64_t incremental_count = 0;
  int64_t decremental_count = 0;
  int64_t neutral_potential_sum = 0;
};

/// Classifies each component by where its extra edge lives: Incremental
/// components have one more edge from the second matching (walking them
/// turns the first matching into a larger one), Decremental the reverse,
/// Neutral components balance (paths or cycles).
ChainDecomposition decompose_symmetric_difference(const Instance& instance, const Matching& first,
                                                  const Matching& second);

}  // namespace resmatch
