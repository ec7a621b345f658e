// Command-line front end for the reserve matching engine; talks to the
// engine exclusively through the C API in resmatch.h.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "resmatch.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;
constexpr size_t kMaxPrintedViolations = 50;

struct CliError {
  std::string message;
};

[[noreturn]] void die(const std::string& message) { throw CliError{message}; }

void check_rc(int rc) {
  if (rc != RSM_OK) die(rsm_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot write " + path);
  out << text;
}

struct InstanceHandle {
  rsm_instance* ptr = nullptr;
  ~InstanceHandle() { rsm_instance_free(ptr); }
};

struct MatchingHandle {
  rsm_matching* ptr = nullptr;
  ~MatchingHandle() { rsm_matching_free(ptr); }
};

struct OwnedText {
  char* ptr = nullptr;
  ~OwnedText() { rsm_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

void load_instance(const std::string& path, InstanceHandle& handle) {
  check_rc(rsm_instance_parse(read_file(path).c_str(), &handle.ptr));
}

std::string yes_no(bool value) { return value ? "YES" : "NO"; }
std::string ok_violated(bool value) { return value ? "OK" : "VIOLATED"; }

void print_violation_lines(std::ostream& out, const json& violations) {
  size_t shown = 0;
  for (const json& v : violations) {
    if (shown == kMaxPrintedViolations) {
      out << "violations_omitted=" << violations.size() - shown << "\n";
      break;
    }
    out << "violation." << v.at("kind").get<std::string>() << "="
        << v.at("patient").get<std::string>() << ":" << v.at("category").get<std::string>();
    if (v.contains("co_patient")) out << ":" << v.at("co_patient").get<std::string>();
    out << "\n";
    ++shown;
  }
}

struct SolveOptions {
  std::string precedence;
  bool emit_stages = false;
  bool as_json = false;
  std::string out_path;
};

int solve_one(const std::string& path, const SolveOptions& options, std::ostream& out) {
  InstanceHandle instance;
  load_instance(path, instance);
  rsm_result* raw_result = nullptr;
  check_rc(rsm_solve(instance.ptr, options.precedence.empty() ? nullptr
                                                              : options.precedence.c_str(),
                     &raw_result));
  std::unique_ptr<rsm_result, decltype(&rsm_result_free)> result(raw_result, &rsm_result_free);

  MatchingHandle stages[3];
  int64_t assigned[3];
  int64_t beneficiary[3];
  for (int s = 0; s < 3; ++s) {
    check_rc(rsm_result_matching(result.get(), s + 1, &stages[s].ptr));
    check_rc(rsm_matching_stats(instance.ptr, stages[s].ptr, &assigned[s], &beneficiary[s]));
  }
  OwnedText final_doc;
  check_rc(rsm_matching_to_json(instance.ptr, stages[2].ptr, &final_doc.ptr));
  json final_assignments = json::parse(final_doc.str()).at("assignments");

  if (options.as_json) {
    json report = {{"assigned", assigned[2]},
                   {"beneficiary", beneficiary[2]},
                   {"assignments", final_assignments}};
    if (options.emit_stages) {
      report["stages"] = json::array();
      for (int s = 0; s < 3; ++s)
        report["stages"].push_back({{"assigned", assigned[s]}, {"beneficiary", beneficiary[s]}});
    }
    out << report.dump(2) << "\n";
  } else {
    if (options.emit_stages)
      for (int s = 0; s < 3; ++s)
        out << "stage" << s + 1 << ".assigned=" << assigned[s] << "\n"
            << "stage" << s + 1 << ".beneficiary=" << beneficiary[s] << "\n";
    out << "assigned=" << assigned[2] << "\n";
    out << "beneficiary=" << beneficiary[2] << "\n";
    if (options.out_path.empty())
      for (const auto& [patient, category] : final_assignments.items())
        out << "assignment." << patient << "=" << category.get<std::string>() << "\n";
  }
  if (!options.out_path.empty()) {
    write_file(options.out_path, final_doc.str());
    out << "wrote=" << options.out_path << "\n";
  }
  return kExitOk;
}

int run_solve(const std::vector<std::string>& paths, const SolveOptions& options, int jobs) {
  if (paths.size() > 1 && !options.out_path.empty())
    die("--out is only valid with a single instance file");
  if (paths.size() == 1) return solve_one(paths[0], options, std::cout);

  int status = kExitOk;
  for (size_t begin = 0; begin < paths.size(); begin += static_cast<size_t>(jobs)) {
    size_t end = std::min(paths.size(), begin + static_cast<size_t>(jobs));
    std::vector<std::future<std::pair<int, std::string>>> batch;
    for (size_t k = begin; k < end; ++k) {
      batch.push_back(std::async(std::launch::async, [&paths, &options, k] {
        std::ostringstream buffer;
        int rc = kExitOk;
        try {
          rc = solve_one(paths[k], options, buffer);
        } catch (const CliError& err) {
          buffer << "error=" << err.message << "\n";
          rc = kExitError;
        }
        return std::make_pair(rc, buffer.str());
      }));
    }
    for (size_t k = begin; k < end; ++k) {
      auto [rc, text] = batch[k - begin].get();
      std::cout << "instance=" << paths[k] << "\n" << text;
      status = std::max(status, rc);
    }
  }
  return status;
}

int run_check(const std::string& instance_path, const std::string& matching_path, bool as_json) {
  InstanceHandle instance;
  load_instance(instance_path, instance);
  MatchingHandle matching;
  check_rc(rsm_matching_parse(instance.ptr, read_file(matching_path).c_str(), &matching.ptr));
  OwnedText report_text;
  check_rc(rsm_check(instance.ptr, matching.ptr, &report_text.ptr));
  json report = json::parse(report_text.str());

  bool eligibility = report.at("eligibility").at("ok").get<bool>();
  bool nonwasteful = report.at("nonwasteful").at("ok").get<bool>();
  bool priorities = report.at("priorities").at("ok").get<bool>();
  bool pareto = report.at("pareto_optimal").get<bool>();

  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "assigned=" << report.at("assigned").get<int64_t>() << "\n";
    std::cout << "beneficiary=" << report.at("beneficiary").get<int64_t>() << "\n";
    std::cout << "eligibility=" << ok_violated(eligibility) << "\n";
    print_violation_lines(std::cout, report.at("eligibility").at("violations"));
    std::cout << "nonwasteful=" << ok_violated(nonwasteful) << "\n";
    print_violation_lines(std::cout, report.at("nonwasteful").at("violations"));
    std::cout << "priorities=" << ok_violated(priorities) << "\n";
    print_violation_lines(std::cout, report.at("priorities").at("violations"));
    std::cout << "pareto_optimal=" << yes_no(pareto) << "\n";
  }
  return eligibility && nonwasteful && priorities && pareto ? kExitOk : kExitViolations;
}

int run_oracle(const std::string& instance_path, bool force, bool as_json) {
  InstanceHandle instance;
  load_instance(instance_path, instance);
  OwnedText report_text;
  if (force) {
    int64_t patients = 0, categories = 0;
    rsm_instance_counts(instance.ptr, &patients, &categories, nullptr);
    std::cout << "enumeration_bound=" << std::pow(categories + 1.0, patients) << "\n";
  }
  check_rc(rsm_oracle(instance.ptr, force ? 1 : 0, &report_text.ptr));
  json report = json::parse(report_text.str());
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "enumerated=" << report.at("enumerated").get<int64_t>() << "\n";
  std::cout << "max_resource=" << report.at("max_resource").get<int64_t>() << "\n";
  std::cout << "max_beneficiary=" << report.at("max_beneficiary").get<int64_t>() << "\n";
  std::cout << "max_in_max.assigned=" << report.at("max_in_max").at("assigned").get<int64_t>()
            << "\n";
  std::cout << "max_in_max.beneficiary="
            << report.at("max_in_max").at("beneficiary").get<int64_t>() << "\n";
  std::cout << "joint_achievable=" << yes_no(report.at("joint_achievable").get<bool>()) << "\n";
  std::cout << "pareto_equivalence=" << yes_no(report.at("pareto_equivalence").get<bool>()) << "\n";
  return kExitOk;
}

int run_hall(const std::string& instance_path, bool as_json) {
  InstanceHandle instance;
  load_instance(instance_path, instance);
  OwnedText report_text;
  check_rc(rsm_hall(instance.ptr, &report_text.ptr));
  json report = json::parse(report_text.str());
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "q=" << report.at("q").get<int64_t>() << "\n";
  std::cout << "b=" << report.at("b").get<int64_t>() << "\n";
  std::string sparse;
  for (const json& id : report.at("sparse")) {
    if (!sparse.empty()) sparse += ",";
    sparse += id.get<std::string>();
  }
  std::cout << "sparse=" << sparse << "\n";
  std::cout << "premise_holds=" << yes_no(report.at("premise_holds").get<bool>()) << "\n";
  std::cout << "all_beneficiary_exists="
            << yes_no(report.at("all_beneficiary_exists").get<bool>()) << "\n";
  return kExitOk;
}

int run_daim_only(const std::string& instance_path, const std::string& matching_path,
                  const std::string& precedence, const std::string& out_path) {
  InstanceHandle instance;
  load_instance(instance_path, instance);
  MatchingHandle initial;
  if (!matching_path.empty())
    check_rc(rsm_matching_parse(instance.ptr, read_file(matching_path).c_str(), &initial.ptr));
  MatchingHandle result;
  check_rc(rsm_daim(instance.ptr, initial.ptr, precedence.empty() ? nullptr : precedence.c_str(),
                    &result.ptr));
  int64_t assigned = 0, beneficiary = 0;
  check_rc(rsm_matching_stats(instance.ptr, result.ptr, &assigned, &beneficiary));
  OwnedText doc;
  check_rc(rsm_matching_to_json(instance.ptr, result.ptr, &doc.ptr));
  std::cout << "assigned=" << assigned << "\n";
  std::cout << "beneficiary=" << beneficiary << "\n";
  if (out_path.empty()) {
    json assignments = json::parse(doc.str()).at("assignments");
    for (const auto& [patient, category] : assignments.items())
      std::cout << "assignment." << patient << "=" << category.get<std::string>() << "\n";
  } else {
    write_file(out_path, doc.str());
    std::cout << "wrote=" << out_path << "\n";
  }
  return kExitOk;
}

struct GenOptions {
  std::string preset;
  std::string out_path;
  uint64_t seed = 0;
  int64_t patients = 6;
  int64_t categories = 3;
  int64_t reserve_min = 1;
  int64_t reserve_max = 3;
  int64_t supply_cap = 0;
  double list_fraction = 0.8;
  double beta_max_frac = 0.5;
  double eta_min_frac = 0.0;
};

int run_gen(const GenOptions& options) {
  InstanceHandle instance;
  if (!options.preset.empty()) {
    check_rc(rsm_instance_preset(options.preset.c_str(), &instance.ptr));
  } else {
    json spec = {{"patients", options.patients},
                 {"categories", options.categories},
                 {"reserve_min", options.reserve_min},
                 {"reserve_max", options.reserve_max},
                 {"supply_cap", options.supply_cap},
                 {"list_fraction", options.list_fraction},
                 {"beta_max_frac", options.beta_max_frac},
                 {"eta_min_frac", options.eta_min_frac}};
    check_rc(rsm_instance_random(spec.dump().c_str(), options.seed, &instance.ptr));
  }
  OwnedText text;
  check_rc(rsm_instance_to_json(instance.ptr, &text.ptr));
  if (options.out_path.empty()) {
    std::cout << text.str();
  } else {
    write_file(options.out_path, text.str());
    std::cout << "wrote=" << options.out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reserve matching engine (threshold priorities, three-stage mechanism)"};
  app.require_subcommand(1);

  std::vector<std::string> solve_paths;
  SolveOptions solve_options;
  int jobs = 1;
  CLI::App* solve = app.add_subcommand("solve", "Run the matching pipeline on instance files");
  solve->add_option("instances", solve_paths, "instance JSON files")->required()->expected(-1);
  solve->add_option("--precedence", solve_options.precedence,
                    "comma-separated category ids (default: declaration order)");
  solve->add_flag("--emit-stages", solve_options.emit_stages, "report per-stage statistics");
  solve->add_flag("--json", solve_options.as_json, "emit a JSON report");
  solve->add_option("--out", solve_options.out_path, "write the final matching document here");
  solve->add_option("--jobs", jobs, "process instance files concurrently")
      ->check(CLI::Range(1, 256));

  std::string check_instance, check_matching;
  bool check_json = false;
  CLI::App* check = app.add_subcommand("check", "Audit a matching document against an instance");
  check->add_option("instance", check_instance, "instance JSON file")->required();
  check->add_option("matching", check_matching, "matching JSON file")->required();
  check->add_flag("--json", check_json, "emit a JSON report");

  std::string oracle_instance;
  bool oracle_force = false;
  bool oracle_json = false;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optima and theorem checks");
  oracle->add_option("instance", oracle_instance, "instance JSON file")->required();
  oracle->add_flag("--force-oracle", oracle_force, "override the enumeration size guard");
  oracle->add_flag("--json", oracle_json, "emit a JSON report");

  std::string hall_instance;
  bool hall_json = false;
  CLI::App* hall = app.add_subcommand("hall", "All-units-to-beneficiaries possibility report");
  hall->add_option("instance", hall_instance, "instance JSON file")->required();
  hall->add_flag("--json", hall_json, "emit a JSON report");

  std::string daim_instance, daim_matching, daim_precedence, daim_out;
  CLI::App* daim = app.add_subcommand(
      "daim", "Deferred acceptance alone, for comparison against the full pipeline");
  daim->add_option("instance", daim_instance, "instance JSON file")->required();
  daim->add_option("--initial", daim_matching,
                   "seed matching JSON file (default: empty matching)");
  daim->add_option("--precedence", daim_precedence,
                   "comma-separated category ids (default: declaration order)");
  daim->add_option("--out", daim_out, "write the resulting matching document here");

  GenOptions gen_options;
  CLI::App* gen = app.add_subcommand("gen", "Write a preset or seeded random instance");
  gen->add_option("--preset", gen_options.preset,
                  "one of: example1, example2, example3, pandemic");
  gen->add_option("--seed", gen_options.seed, "random seed");
  gen->add_option("--patients", gen_options.patients, "patient count");
  gen->add_option("--categories", gen_options.categories, "category count");
  gen->add_option("--reserve-min", gen_options.reserve_min, "minimum reserve per category");
  gen->add_option("--reserve-max", gen_options.reserve_max, "maximum reserve per category");
  gen->add_option("--supply-cap", gen_options.supply_cap, "resample reserves until the sum fits");
  gen->add_option("--list-fraction", gen_options.list_fraction,
                  "probability that a patient is listed in a category");
  gen->add_option("--beta-max-frac", gen_options.beta_max_frac,
                  "beta lands in this leading share of the list");
  gen->add_option("--eta-min-frac", gen_options.eta_min_frac,
                  "eta lands past this share of the list");
  gen->add_option("--out", gen_options.out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (solve->parsed()) return run_solve(solve_paths, solve_options, jobs);
    if (check->parsed()) return run_check(check_instance, check_matching, check_json);
    if (oracle->parsed()) return run_oracle(oracle_instance, oracle_force, oracle_json);
    if (hall->parsed()) return run_hall(hall_instance, hall_json);
    if (daim->parsed()) return run_daim_only(daim_instance, daim_matching, daim_precedence, daim_out);
    if (gen->parsed()) return run_gen(gen_options);
  } catch (const CliError& err) {
    std::cerr << "error: " << err.message << "\n";
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
