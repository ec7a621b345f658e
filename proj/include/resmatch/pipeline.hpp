#pragma once

#include <optional>

#include "resmatch/daim.hpp"
#include "resmatch/model.hpp"

namespace resmatch {

/// Per-stage outputs of the three-stage mechanism. Every stage matches the
/// same number of patients; the beneficiary count never decreases from one
/// stage to the next.
struct PipelineResult {
  Matching mu1;  // maximum size on the eligibility graph
  Matching mu2;  // beneficiary-optimal among maximum-size matchings
  Matching mu3;  // additionally respects priorities
  MatchingStats stats1;
  MatchingStats stats2;
  MatchingStats stats3;
  PrecedenceOrder precedence;
};

/// Runs the full pipeline: maximum matching, positive-chain augmentation,
/// then deferred acceptance seeded with the stage-two matching. Total on
/// every valid instance. Stage one warm-starts from a maximum matching of
/// the beneficiary-only graph; which maximum matching stage one picks is
/// unconstrained, and the warm start leaves less repair work for stage two.
PipelineResult smart_pipeline(const Instance& instance,
                              const std::optional<PrecedenceOrder>& precedence = std::nullopt);

}  // namespace resmatch
