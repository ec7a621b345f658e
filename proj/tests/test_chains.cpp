#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "resmatch/chains.hpp"
#include "resmatch/generate.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/slot_graph.hpp"

using namespace resmatch;

namespace {

// Five categories in a row, reserve one each; the chain that shifts every
// patient one category to the left gains two beneficiary entries (i2 into c3,
// i4 into c5) and loses one (i1 out of c1).
Instance figure_chain_instance() {
  RawInstance raw;
  raw.patients = {"i0", "i1", "i2", "i3", "i4", "i5"};
  raw.categories.push_back(test::raw_category("c1", 1, {"i1", kBetaMarker, "i0", kEtaMarker}));
  raw.categories.push_back(test::raw_category("c2", 1, {kBetaMarker, "i1", "i2", kEtaMarker}));
  raw.categories.push_back(test::raw_category("c3", 1, {"i2", kBetaMarker, "i3", kEtaMarker}));
  raw.categories.push_back(test::raw_category("c4", 1, {kBetaMarker, "i3", "i4", kEtaMarker}));
  raw.categories.push_back(test::raw_category("c5", 1, {"i4", kBetaMarker, "i5", kEtaMarker}));
  return validate_instance(raw);
}

int32_t find_edge_weight(const ChainGraph& graph, int32_t from, int32_t to) {
  for (const ChainGraph::Edge& e : graph.edges)
    if (e.from == from && e.to == to) return e.weight;
  FAIL("edge not present in chain graph");
  return 0;
}

// Total weight of the graph path (or cycle) that realizes the chain; the
// slot-anchored version includes the final matching edge for the freed slot.
int64_t chain_path_weight(const Instance& inst, const Matching& mu, const AlternatingChain& chain) {
  ChainGraph g = build_chain_graph(inst, mu);
  int64_t total = 0;
  switch (chain.kind) {
    case AlternatingChain::PatientAnchored:
      total += find_edge_weight(g, g.source(), g.w_patient(chain.patients[0]));
      for (size_t k = 0; k < chain.categories.size(); ++k) {
        total += find_edge_weight(g, g.w_patient(chain.patients[k]),
                                  g.w_category(chain.categories[k]));
        total += find_edge_weight(g, g.w_category(chain.categories[k]),
                                  g.w_patient(chain.patients[k + 1]));
      }
      break;
    case AlternatingChain::SlotAnchored:
      total += find_edge_weight(g, g.source(), g.v_category(chain.categories[0]));
      for (size_t k = 0; k < chain.categories.size(); ++k) {
        total += find_edge_weight(g, g.v_category(chain.categories[k]),
                                  g.v_patient(chain.patients[k]));
        int32_t leaves = mu.to_category[chain.patients[k]];
        total += find_edge_weight(g, g.v_patient(chain.patients[k]), g.v_category(leaves));
      }
      break;
    case AlternatingChain::Cycle:
      for (size_t k = 0; k < chain.categories.size(); ++k) {
        total += find_edge_weight(g, g.w_patient(chain.patients[k]),
                                  g.w_category(chain.categories[k]));
        total += find_edge_weight(g, g.w_category(mu.to_category[chain.patients[k]]),
                                  g.w_patient(chain.patients[k]));
      }
      break;
  }
  return total;
}

AlternatingChain make_chain(AlternatingChain::Kind kind, std::vector<int32_t> patients,
                            std::vector<int32_t> categories) {
  AlternatingChain chain;
  chain.kind = kind;
  chain.patients = std::move(patients);
  chain.categories = std::move(categories);
  return chain;
}

}  // namespace

TEST_CASE("potential of the five-hop illustration chain") {
  Instance inst = figure_chain_instance();
  Matching mu = test::match(
      inst, {{"i1", "c1"}, {"i2", "c2"}, {"i3", "c3"}, {"i4", "c4"}, {"i5", "c5"}});
  AlternatingChain chain =
      make_chain(AlternatingChain::PatientAnchored, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4});
  CHECK(chain_potential(inst, mu, chain) == 1);
  CHECK(chain_path_weight(inst, mu, chain) == -1);

  Matching augmented = augment_chain(inst, mu, chain);
  CHECK(matching_stats(inst, augmented).assigned == 5);
  CHECK(matching_stats(inst, augmented).beneficiary_assigned ==
        matching_stats(inst, mu).beneficiary_assigned + 1);
}

TEST_CASE("potential of the simple swap chain is negative") {
  Instance ex1 = preset_instance("example1");
  Matching mu = test::match(ex1, {{"i1", "c1"}});
  AlternatingChain chain = make_chain(AlternatingChain::PatientAnchored, {1, 0}, {0});
  CHECK(chain_potential(ex1, mu, chain) == -1);
  Matching augmented = augment_chain(ex1, mu, chain);
  CHECK(augmented == test::match(ex1, {{"i2", "c1"}}));
  CHECK(matching_stats(ex1, augmented).assigned == 1);
}

TEST_CASE("potential of the crossed-thresholds cycle") {
  Instance ex2 = preset_instance("example2");
  Matching mu = test::match(ex2, {{"i1", "c2"}, {"i2", "c1"}});
  AlternatingChain cycle = make_chain(AlternatingChain::Cycle, {0, 1}, {0, 1});
  CHECK(chain_potential(ex2, mu, cycle) == 2);
  CHECK(chain_path_weight(ex2, mu, cycle) == -2);

  Matching augmented = augment_chain(ex2, mu, cycle);
  CHECK(augmented == test::match(ex2, {{"i1", "c1"}, {"i2", "c2"}}));
  CHECK(matching_stats(ex2, augmented).beneficiary_assigned == 2);
}

TEST_CASE("invalid chains are rejected") {
  Instance ex1 = preset_instance("example1");
  Matching mu = test::match(ex1, {{"i1", "c1"}});
  // A cycle needs at least two matching hops.
  CHECK_THROWS_AS(chain_potential(ex1, mu, make_chain(AlternatingChain::Cycle, {0}, {0})), Error);
  // Anchor patient must be unmatched.
  CHECK_THROWS_AS(
      augment_chain(ex1, mu, make_chain(AlternatingChain::PatientAnchored, {0, 1}, {0})), Error);
  // Entering hop must satisfy eligibility (i2 is below eta in c2).
  CHECK_THROWS_AS(
      augment_chain(ex1, mu, make_chain(AlternatingChain::PatientAnchored, {1, 0}, {1})), Error);
  // Matching hop must match the current assignment.
  CHECK_THROWS_AS(
      augment_chain(ex1, empty_matching(ex1),
                    make_chain(AlternatingChain::PatientAnchored, {1, 0}, {0})),
      Error);
}

TEST_CASE("slot-anchored chains move a patient into a free slot") {
  Instance ex1 = preset_instance("example1");
  Matching mu = test::match(ex1, {{"i1", "c1"}});
  // i1 moves from c1 (beneficiary) into c2 (not a beneficiary): potential -1.
  AlternatingChain chain = make_chain(AlternatingChain::SlotAnchored, {0}, {1});
  CHECK(chain_potential(ex1, mu, chain) == -1);
  CHECK(chain_path_weight(ex1, mu, chain) == 1);
  Matching augmented = augment_chain(ex1, mu, chain);
  CHECK(augmented == test::match(ex1, {{"i1", "c2"}}));
}

TEST_CASE("chain graph of the locked crossed matching") {
  Instance ex2 = preset_instance("example2");
  Matching mu = test::match(ex2, {{"i1", "c2"}, {"i2", "c1"}});
  ChainGraph g = build_chain_graph(ex2, mu);
  for (const ChainGraph::Edge& e : g.edges) {
    CHECK(e.from != g.source());  // no free slot, no unmatched patient
    CHECK((e.weight == -1 || e.weight == 0 || e.weight == 1));
  }
  // The improving cycle sits in the v-copy with total weight -2.
  int64_t cycle_weight = find_edge_weight(g, g.v_category(0), g.v_patient(0)) +
                         find_edge_weight(g, g.v_patient(0), g.v_category(1)) +
                         find_edge_weight(g, g.v_category(1), g.v_patient(1)) +
                         find_edge_weight(g, g.v_patient(1), g.v_category(0));
  CHECK(cycle_weight == -2);
}

TEST_CASE("chain graph respects the copy separation and source rules") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = test::small_random_instance(seed);
    Matching mu = maximum_matching(build_slot_graph(inst));
    ChainGraph g = build_chain_graph(inst, mu);
    std::vector<int32_t> fills = fill_counts(inst, mu);

    std::set<std::pair<int32_t, int32_t>> source_edges;
    auto copy_of = [&](int32_t v) {  // 0 source, 1 v-copy, 2 w-copy
      if (v == g.source()) return 0;
      if (v < g.w_category(0)) return 1;
      if (v < g.v_patient(0)) return 2;
      if (v < g.w_patient(0)) return 1;
      return 2;
    };
    for (const ChainGraph::Edge& e : g.edges) {
      if (e.from == g.source()) {
        source_edges.insert({e.from, e.to});
        continue;
      }
      CHECK(copy_of(e.from) == copy_of(e.to));
    }
    for (int32_t c = 0; c < inst.num_categories(); ++c)
      CHECK(source_edges.count({g.source(), g.v_category(c)}) ==
            (fills[c] < inst.category(c).reserve ? 1 : 0));
    for (int32_t i = 0; i < inst.num_patients(); ++i)
      CHECK(source_edges.count({g.source(), g.w_patient(i)}) ==
            (mu.to_category[i] == kUnmatched ? 1 : 0));
  }
}

TEST_CASE("chain graph of the empty instance is a lone source") {
  Instance empty = validate_instance(RawInstance{});
  ChainGraph g = build_chain_graph(empty, empty_matching(empty));
  CHECK(g.num_vertices() == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("find_positive_chain on the worked examples") {
  Instance ex2 = preset_instance("example2");
  Matching locked = test::match(ex2, {{"i1", "c2"}, {"i2", "c1"}});
  auto chain = find_positive_chain(ex2, locked);
  REQUIRE(chain.has_value());
  CHECK(chain->kind == AlternatingChain::Cycle);
  CHECK(chain_potential(ex2, locked, *chain) == 2);

  Instance ex1 = preset_instance("example1");
  CHECK_FALSE(find_positive_chain(ex1, test::match(ex1, {{"i1", "c2"}, {"i2", "c1"}})));
}

TEST_CASE("max_in_max on the worked examples") {
  Instance ex2 = preset_instance("example2");
  Matching locked = test::match(ex2, {{"i1", "c2"}, {"i2", "c1"}});
  CHECK(max_in_max(ex2, locked) == test::match(ex2, {{"i1", "c1"}, {"i2", "c2"}}));

  Instance ex1 = preset_instance("example1");
  Matching mu_e = test::match(ex1, {{"i1", "c2"}, {"i2", "c1"}});
  CHECK(max_in_max(ex1, mu_e) == mu_e);

  Matching crossed = test::match(ex2, {{"i1", "c1"}, {"i2", "c2"}});
  CHECK(max_in_max(ex2, crossed) == crossed);  // already optimal
}

// Fixed-point soundness: over every maximum-size matching of small
// instances, the finder returns nothing exactly when the beneficiary count is
// already optimal, and an augmentation otherwise improves it by the potential.
TEST_CASE("finder fixed point matches the exhaustive optimum") {
  int64_t suboptimal_seen = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = test::small_random_instance(seed);
    MatchingStats lex = oracle_max_in_max(inst);
    for_each_matching(inst, {}, [&](const Matching& mu) {
      MatchingStats stats = matching_stats(inst, mu);
      if (stats.assigned != lex.assigned) return true;
      auto chain = find_positive_chain(inst, mu);
      if (stats.beneficiary_assigned == lex.beneficiary_assigned) {
        CHECK_FALSE(chain.has_value());
      } else {
        ++suboptimal_seen;
        REQUIRE(chain.has_value());
        int64_t phi = chain_potential(inst, mu, *chain);
        CHECK(phi >= 1);
        Matching next = augment_chain(inst, mu, *chain);
        MatchingStats after = matching_stats(inst, next);
        CHECK(after.assigned == stats.assigned);
        CHECK(after.beneficiary_assigned == stats.beneficiary_assigned + phi);
        CHECK(check_eligibility(inst, next).empty());
        CHECK(chain_path_weight(inst, mu, *chain) == -phi);
      }
      return true;
    });
  }
  CHECK(suboptimal_seen > 100);
}

TEST_CASE("max_in_max reaches the lexicographic optimum") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = test::small_random_instance(seed);
    Matching mu1 = maximum_matching(build_slot_graph(inst));
    Matching mu2 = max_in_max(inst, mu1);
    CHECK(matching_stats(inst, mu2) == oracle_max_in_max(inst));
    CHECK(check_eligibility(inst, mu2).empty());
    CHECK_FALSE(find_positive_chain(inst, mu2).has_value());
    CHECK(max_in_max(inst, mu2) == mu2);
  }
}
