// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria 1 and 2 drive the installed CLI end to end; the
// rest use the library against the exhaustive oracles.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "resmatch/chains.hpp"
#include "resmatch/generate.hpp"
#include "resmatch/json_io.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/pipeline.hpp"
#include "resmatch/slot_graph.hpp"

using namespace resmatch;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CliRun {
  int status = -1;
  std::map<std::string, std::string> values;
  std::string raw;
};

CliRun run_cli(const std::string& args) {
  CliRun run;
  std::string command = std::string(RESMATCH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return run;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) run.raw.append(buffer, got);
  run.status = WEXITSTATUS(pclose(pipe));
  std::istringstream stream(run.raw);
  for (std::string line; std::getline(stream, line);) {
    size_t eq = line.find('=');
    if (eq != std::string::npos) run.values[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return run;
}

std::string workdir() {
  static std::string dir = [] {
    std::string path = "/tmp/resmatch_acceptance_XXXXXX";
    if (!mkdtemp(path.data())) std::exit(2);
    return path;
  }();
  return dir;
}

// The shared corpus for criteria 3-5: |I| <= 7, |C| <= 4, q <= 6.
Instance corpus_instance(uint64_t seed) {
  Rng pick(seed * 2654435761u + 17);
  RandomSpec spec;
  spec.patients = pick.range(1, 7);
  spec.categories = pick.range(1, 4);
  spec.reserve_min = 1;
  spec.reserve_max = 3;
  spec.supply_cap = 6;
  spec.list_fraction = 0.4 + 0.6 * (seed % 7) / 6.0;
  spec.beta_max_frac = 0.7;
  spec.eta_min_frac = 0.0;
  return generate_random(spec, seed);
}

bool checkers_empty(const Instance& inst, const Matching& mu, std::string& detail) {
  if (!check_eligibility(inst, mu).empty()) return detail = "eligibility violated", false;
  if (!check_nonwasteful(inst, mu).empty()) return detail = "wasteful", false;
  if (!check_respects_priorities(inst, mu).empty()) return detail = "priorities violated", false;
  return true;
}

bool criterion1(std::string& detail) {
  auto start = Clock::now();
  std::string instance_path = workdir() + "/example1.json";
  CliRun gen = run_cli("gen --preset example1 --out " + instance_path);
  if (gen.status != 0) return detail = "gen failed: " + gen.raw, false;
  CliRun solve = run_cli("solve " + instance_path);
  if (solve.status != 0) return detail = "solve failed: " + solve.raw, false;
  if (solve.values["assignment.i1"] != "c2" || solve.values["assignment.i2"] != "c1")
    return detail = "wrong assignment: " + solve.raw, false;
  if (solve.values["assigned"] != "2" || solve.values["beneficiary"] != "0")
    return detail = "wrong stats: " + solve.raw, false;

  Instance inst = preset_instance("example1");
  Matching mu = matching_from_pairs(inst, {{"i1", "c2"}, {"i2", "c1"}});
  if (!checkers_empty(inst, mu, detail)) return false;
  if (double t = seconds_since(start); t >= 1.0)
    return detail = "took " + std::to_string(t) + " s", false;
  return true;
}

bool criterion2(std::string& detail) {
  auto start = Clock::now();
  std::string instance_path = workdir() + "/example1.json";
  CliRun oracle = run_cli("oracle " + instance_path);
  if (oracle.status != 0) return detail = "oracle failed: " + oracle.raw, false;
  if (oracle.values["max_resource"] != "2") return detail = "max_resource: " + oracle.raw, false;
  if (oracle.values["max_beneficiary"] != "1")
    return detail = "max_beneficiary: " + oracle.raw, false;
  if (oracle.values["joint_achievable"] != "NO")
    return detail = "joint_achievable: " + oracle.raw, false;
  if (double t = seconds_since(start); t >= 1.0)
    return detail = "took " + std::to_string(t) + " s", false;
  return true;
}

bool criterion3(std::string& detail) {
  auto start = Clock::now();
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    if (!check_pareto_maximality_equivalence(corpus_instance(seed)))
      return detail = "equivalence fails at seed " + std::to_string(seed), false;
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 120.0) return detail = "took " + std::to_string(elapsed) + " s", false;
  return true;
}

bool criterion4(std::string& detail) {
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    Instance inst = corpus_instance(seed);
    PipelineResult result = smart_pipeline(inst);
    if (matching_stats(inst, result.mu3) != oracle_max_in_max(inst))
      return detail = "not lexicographically optimal at seed " + std::to_string(seed), false;
    if (!checkers_empty(inst, result.mu3, detail)) {
      detail += " at seed " + std::to_string(seed);
      return false;
    }
  }
  return true;
}

bool criterion5(std::string& detail) {
  int64_t injections = 0;
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    Instance inst = corpus_instance(seed);
    PipelineResult result = smart_pipeline(inst);
    if (find_positive_chain(inst, result.mu2).has_value())
      return detail = "stage-two output admits a chain at seed " + std::to_string(seed), false;

    // Inject the worst equal-size matching when a suboptimal one exists.
    MatchingStats lex = oracle_max_in_max(inst);
    Matching injected;
    int64_t worst = lex.beneficiary_assigned;
    for_each_matching(inst, {}, [&](const Matching& mu) {
      MatchingStats stats = matching_stats(inst, mu);
      if (stats.assigned == lex.assigned && stats.beneficiary_assigned < worst) {
        worst = stats.beneficiary_assigned;
        injected = mu;
      }
      return true;
    });
    if (injected.to_category.empty()) continue;  // no suboptimal equal-size matching exists
    ++injections;
    auto chain = find_positive_chain(inst, injected);
    if (!chain.has_value())
      return detail = "no chain found for injected matching at seed " + std::to_string(seed),
             false;
    int64_t phi = chain_potential(inst, injected, *chain);
    Matching augmented = augment_chain(inst, injected, *chain);
    MatchingStats before = matching_stats(inst, injected);
    MatchingStats after = matching_stats(inst, augmented);
    if (phi < 1 || after.assigned != before.assigned ||
        after.beneficiary_assigned != before.beneficiary_assigned + phi)
      return detail = "augmentation did not improve at seed " + std::to_string(seed), false;
  }
  if (injections < 100)
    return detail = "only " + std::to_string(injections) + " injections exercised", false;
  return true;
}

bool criterion6(std::string& detail) {
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    Instance inst = corpus_instance(seed);
    Rng rng(seed ^ 0xda1a5eed);
    Matching initial = random_compliant_matching(inst, rng);
    Matching result = run_daim(inst, initial, default_precedence(inst));

    std::vector<int32_t> fills_before = fill_counts(inst, initial);
    std::vector<int32_t> fills_after = fill_counts(inst, result);
    for (int32_t c = 0; c < inst.num_categories(); ++c) {
      if (fills_after[c] < fills_before[c])
        return detail = "category count dropped at seed " + std::to_string(seed), false;
      const PriorityOrder& order = inst.category(c).priority;
      int64_t before = 0;
      int64_t after = 0;
      for (int32_t token : order.ranking) {
        if (token < 0) continue;
        if (initial.to_category[token] == c) ++before;
        if (result.to_category[token] == c) ++after;
        if (after < before)
          return detail = "dominance fails at seed " + std::to_string(seed), false;
      }
    }
    if (!check_respects_priorities(inst, result).empty())
      return detail = "priorities violated at seed " + std::to_string(seed), false;
  }
  return true;
}

bool criterion7(std::string& detail) {
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = generate_premise_instance(seed);
    HallReport report = hall_check(inst);
    if (!report.premise_holds)
      return detail = "generator missed the premise at seed " + std::to_string(seed), false;
    if (!report.all_beneficiary_exists)
      return detail = "no all-beneficiary matching at seed " + std::to_string(seed), false;
  }
  HallReport pandemic = hall_check(preset_instance("pandemic"));
  if (!pandemic.premise_holds || !pandemic.all_beneficiary_exists)
    return detail = "pandemic preset fails the possibility check", false;
  return true;
}

bool criterion8(std::string& detail) {
  int64_t pairs = 0;
  for (uint64_t seed = 1; pairs < 500; ++seed) {
    if (seed > 4000) return detail = "corpus exhausted before 500 pairs", false;
    Instance inst = corpus_instance(seed);
    int64_t best = oracle_max_resource(inst);
    std::vector<Matching> maximal;
    for_each_matching(inst, {}, [&](const Matching& mu) {
      if (matching_stats(inst, mu).assigned == best) maximal.push_back(mu);
      return maximal.size() < 12;
    });
    for (size_t a = 0; a < maximal.size() && pairs < 500; ++a) {
      for (size_t b = a + 1; b < maximal.size() && pairs < 500; ++b) {
        ++pairs;
        ChainDecomposition dec = decompose_symmetric_difference(inst, maximal[a], maximal[b]);
        if (dec.incremental_count != 0 || dec.decremental_count != 0)
          return detail = "non-neutral component at seed " + std::to_string(seed), false;
        int64_t diff = matching_stats(inst, maximal[b]).beneficiary_assigned -
                       matching_stats(inst, maximal[a]).beneficiary_assigned;
        if (dec.neutral_potential_sum != diff)
          return detail = "potential sum mismatch at seed " + std::to_string(seed), false;
      }
    }
  }
  return true;
}

bool criterion9(std::string& detail) {
  RandomSpec spec;
  spec.patients = 10000;
  spec.categories = 50;
  spec.reserve_min = 100;
  spec.reserve_max = 100;
  spec.list_fraction = 0.3;
  spec.beta_max_frac = 0.3;
  spec.eta_min_frac = 0.9;
  Instance inst = generate_random(spec, 42);
  if (inst.total_supply() != 5000) return detail = "unexpected supply", false;

  auto start = Clock::now();
  PipelineResult result = smart_pipeline(inst);
  if (!checkers_empty(inst, result.mu3, detail)) return false;
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return detail = "took " + std::to_string(elapsed) + " s", false;
  detail = "assigned " + std::to_string(result.stats3.assigned) + "/5000, beneficiaries " +
           std::to_string(result.stats3.beneficiary_assigned) + ", " + std::to_string(elapsed) +
           " s";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden example via solve", criterion1},
      {2, "impossibility witness via oracle", criterion2},
      {3, "Pareto/maximality equivalence on 1000 instances", criterion3},
      {4, "pipeline reaches the lexicographic optimum", criterion4},
      {5, "positive-chain fixed point and improvement", criterion5},
      {6, "deferred acceptance monotonicity and dominance", criterion6},
      {7, "possibility premise implies an all-beneficiary matching", criterion7},
      {8, "maximum-pair decomposition structure", criterion8},
      {9, "scale run (10000 patients, 50 categories)", criterion9},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& err) {
      detail = std::string("exception: ") + err.what();
    }
    double elapsed = seconds_since(start);
    std::printf("criterion %d [%s]: %s (%.2f s)%s%s\n", criterion.id, criterion.name,
                ok ? "PASS" : "FAIL", elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
