// Batch entry point: load instances, run preservation checks, reconstructions,
// lemma property suites and gallery regressions; emit JSON or text reports.
//
// Exit codes: 0 all non-skipped checks pass, 1 check failures, 2 malformed
// input (the message names the offending field).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "meanlab/json_io.hpp"
#include "meanlab/suites.hpp"

namespace {

using meanlab::Json;

struct RunConfig {
  std::string command;
  std::string instance_path;
  std::string mean = "arithmetic";
  int max_multiset = 3;
  std::uint64_t seed = 0;
  int trials = 300;
  std::vector<int> dims = {2, 3, 4, 5, 6};
  std::string gallery_id;  // empty = all
  std::string output;      // empty = stdout
  std::string format = "json";
};

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  if (!cfg.instance_path.empty()) j["instance"] = cfg.instance_path;
  j["mean"] = cfg.mean;
  j["max_multiset"] = cfg.max_multiset;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["dims"] = cfg.dims;
  if (!cfg.gallery_id.empty()) j["id"] = cfg.gallery_id;
  j["format"] = cfg.format;
  return j;
}

int run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = 1;
  report["command"] = cfg.command;
  report["config"] = config_json(cfg);

  meanlab::SuiteReport suite;

  if (cfg.command == "check") {
    const meanlab::PreserverMap map = meanlab::load_instance(cfg.instance_path);
    const meanlab::MeanKind kind = meanlab::MeanKind::parse(cfg.mean);
    const meanlab::PreservationReport pres =
        meanlab::check_mean_preservation(map, kind, cfg.max_multiset);
    suite.records.push_back(meanlab::make_record(
        "check/" + kind.name(), pres.preserved(),
        std::to_string(pres.violations.size()) + " violations in " +
            std::to_string(pres.multisets_checked) + " multisets" +
            (pres.truncated ? " (search truncated)" : "")));
    const Json pres_json = meanlab::preservation_report_json(pres, map);
    report["kind"] = pres_json.at("kind");
    report["max_multiset"] = pres_json.at("max_multiset");
    report["max_violation"] = pres_json.at("max_violation");
    report["truncated"] = pres_json.at("truncated");
    report["violations"] = pres_json.at("violations");
  } else if (cfg.command == "reconstruct") {
    const meanlab::PreserverMap map = meanlab::load_instance(cfg.instance_path);
    try {
      const meanlab::ReconstructionResult r = meanlab::reconstruct(map);
      suite.records.push_back(meanlab::make_record(
          "reconstruct", true, "residual " + std::to_string(r.residual)));
      report["reconstruction"] = meanlab::reconstruction_json(r, map);
    } catch (const meanlab::NotAPreserverError& e) {
      suite.records.push_back(meanlab::make_record("reconstruct", false, e.what()));
    } catch (const meanlab::DisjointnessViolationError& e) {
      suite.records.push_back(meanlab::make_record("reconstruct", false, e.what()));
    }
  } else if (cfg.command == "lemmas") {
    suite = meanlab::lemma_suite({cfg.seed, cfg.trials, cfg.dims});
  } else if (cfg.command == "gallery") {
    if (cfg.gallery_id.empty()) {
      suite = meanlab::gallery_suite();
    } else {
      const auto records = meanlab::verify_gallery(meanlab::gallery(cfg.gallery_id));
      suite.records.insert(suite.records.end(), records.begin(), records.end());
    }
  } else {  // all
    suite = meanlab::gallery_suite();
    const meanlab::SuiteReport lemmas = meanlab::lemma_suite({cfg.seed, cfg.trials, cfg.dims});
    suite.append(lemmas);
  }

  report["records"] = meanlab::suite_records_json(suite.records);
  report["summary"] = meanlab::summary_json(suite);
  report["wall_time"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string payload =
      cfg.format == "text" ? meanlab::report_text(report) : report.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << payload;
  } else {
    meanlab::write_file_atomic(cfg.output, payload);
  }
  return suite.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-mean preserver checks on finite spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env_seed = std::getenv("MEANLAB_SEED")) {
    try {
      cfg.seed = std::stoull(env_seed);
    } catch (const std::exception&) {
      std::cerr << "malformed field 'MEANLAB_SEED': not an integer\n";
      return 2;
    }
  }

  const auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--output", cfg.output, "write the report to this path (atomic)");
    cmd->add_option("--format", cfg.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* check = app.add_subcommand("check", "mean-preservation check on an instance");
  check->add_option("--instance", cfg.instance_path, "instance JSON path")->required();
  check->add_option("--mean", cfg.mean, "arithmetic|geometric|harmonic|power:<p>");
  check->add_option("--max-multiset", cfg.max_multiset, "multiset size bound")
      ->check(CLI::PositiveNumber);
  add_common(check);

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "recover Y0 and tau");
  reconstruct->add_option("--instance", cfg.instance_path, "instance JSON path")->required();
  add_common(reconstruct);

  CLI::App* lemmas = app.add_subcommand("lemmas", "seeded lemma property suites");
  lemmas->add_option("--seed", cfg.seed, "RNG seed");
  lemmas->add_option("--trials", cfg.trials, "trials per suite")->check(CLI::PositiveNumber);
  lemmas->add_option("--dims", cfg.dims, "matrix dimensions")->delimiter(',');
  add_common(lemmas);

  CLI::App* gallery = app.add_subcommand("gallery", "counterexample gallery regressions");
  gallery->add_option("--id", cfg.gallery_id, "single example id (default: all)");
  add_common(gallery);

  CLI::App* all = app.add_subcommand("all", "gallery plus lemma suites");
  all->add_option("--seed", cfg.seed, "RNG seed");
  all->add_option("--trials", cfg.trials, "trials per suite")->check(CLI::PositiveNumber);
  all->add_option("--dims", cfg.dims, "matrix dimensions")->delimiter(',');
  add_common(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (CLI::App* cmd : {check, reconstruct, lemmas, gallery, all}) {
    if (cmd->parsed()) cfg.command = cmd->get_name();
  }

  try {
    return run(cfg);
  } catch (const meanlab::InstanceFormatError& e) {
    std::cerr << "malformed field '" << e.field << "': " << e.what() << "\n";
    return 2;
  } catch (const meanlab::UnknownExampleError& e) {
    std::cerr << "malformed field 'id': " << e.what() << "\n";
    return 2;
  } catch (const meanlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
