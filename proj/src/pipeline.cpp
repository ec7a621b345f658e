#include "resmatch/pipeline.hpp"

#include "resmatch/chains.hpp"
#include "resmatch/slot_graph.hpp"

namespace resmatch {

PipelineResult smart_pipeline(const Instance& instance,
                              const std::optional<PrecedenceOrder>& precedence) {
  PipelineResult result;
  result.precedence = precedence ? *precedence : default_precedence(instance);

  Matching seed = maximum_matching(build_slot_graph(instance, EdgeRule::Beneficiary));
  result.mu1 = maximum_matching(build_slot_graph(instance, EdgeRule::Eligible), &seed);
  result.mu2 = max_in_max(instance, result.mu1);
  result.mu3 = run_daim(instance, result.mu2, result.precedence);

  result.stats1 = matching_stats(instance, result.mu1);
  result.stats2 = matching_stats(instance, result.mu2);
  result.stats3 = matching_stats(instance, result.mu3);
  return result;
}

}  // namespace resmatch
