#include <doctest.h>

#include "helpers.hpp"
#include "resmatch/generate.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/slot_graph.hpp"

using namespace resmatch;

TEST_CASE("slot graph of the worked examples") {
  Instance ex1 = preset_instance("example1");
  SlotGraph graph = build_slot_graph(ex1);
  CHECK(graph.num_slots() == 2);
  CHECK(graph.num_patients == 2);
  CHECK(graph.edge_count() == 3);  // (i1,c1), (i2,c1), (i1,c2)
  CHECK(graph.adj[0] == std::vector<int32_t>{0, 1});
  CHECK(graph.adj[1] == std::vector<int32_t>{0});

  CHECK(build_slot_graph(validate_instance(RawInstance{})).num_slots() == 0);
  CHECK(build_slot_graph(preset_instance("example2")).edge_count() == 4);
}

TEST_CASE("slot expansion multiplies by the reserve") {
  RawInstance raw;
  raw.patients = {"i1", "i2", "i3"};
  raw.categories.push_back(
      test::raw_category("c1", 2, {"i1", kBetaMarker, "i2", "i3", kEtaMarker}));
  SlotGraph graph = build_slot_graph(validate_instance(raw));
  CHECK(graph.num_slots() == 2);
  CHECK(graph.edge_count() == 6);  // three eligible patients, two slots each
}

TEST_CASE("maximum matching recovers the forced assignment") {
  Instance ex1 = preset_instance("example1");
  Matching mu = maximum_matching(build_slot_graph(ex1));
  CHECK(mu == test::match(ex1, {{"i1", "c2"}, {"i2", "c1"}}));

  CHECK(maximum_matching(build_slot_graph(validate_instance(RawInstance{}))).to_category.empty());
  CHECK(matching_stats(preset_instance("example2"),
                       maximum_matching(build_slot_graph(preset_instance("example2"))))
            .assigned == 2);
}

TEST_CASE("max_resource_size on fixed points") {
  CHECK(max_resource_size(preset_instance("example1")) == 2);

  RawInstance raw;  // nobody is eligible anywhere
  raw.patients = {"i1"};
  raw.categories.push_back(test::raw_category("c1", 1, {kBetaMarker, kEtaMarker, "i1"}));
  CHECK(max_resource_size(validate_instance(raw)) == 0);

  Instance seeded = test::small_random_instance(6);
  CHECK(max_resource_size(seeded) == oracle_max_resource(seeded));
}

TEST_CASE("matcher agrees with the exhaustive oracle") {
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = test::small_random_instance(seed, 8);
    SlotGraph graph = build_slot_graph(inst);
    Matching mu = maximum_matching(graph);
    MatchingStats stats = matching_stats(inst, mu);
    CHECK(stats.assigned == oracle_max_resource(inst));
    CHECK(check_eligibility(inst, mu).empty());
    std::vector<int32_t> fills = fill_counts(inst, mu);
    for (int32_t c = 0; c < inst.num_categories(); ++c)
      CHECK(fills[c] <= inst.category(c).reserve);
    CHECK(maximum_matching(graph) == mu);  // deterministic
    CHECK(is_pareto_optimal_bruteforce(inst, mu));
  }
}

TEST_CASE("warm start preserves maximality") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = test::small_random_instance(seed);
    Matching seeded = maximum_matching(build_slot_graph(inst, EdgeRule::Beneficiary));
    Matching mu = maximum_matching(build_slot_graph(inst), &seeded);
    CHECK(matching_stats(inst, mu).assigned == oracle_max_resource(inst));
    CHECK(check_eligibility(inst, mu).empty());
  }
}

TEST_CASE("beneficiary-rule graph only uses beneficiary edges") {
  Instance ex1 = preset_instance("example1");
  SlotGraph graph = build_slot_graph(ex1, EdgeRule::Beneficiary);
  CHECK(graph.edge_count() == 1);  // only (i1, c1)
  Matching mu = maximum_matching(graph);
  CHECK(mu == test::match(ex1, {{"i1", "c1"}}));
}
