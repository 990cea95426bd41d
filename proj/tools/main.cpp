#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "twocopy/bellmeas.hpp"
#include "twocopy/channels.hpp"
#include "twocopy/errors.hpp"
#include "twocopy/experiment.hpp"
#include "twocopy/serialize.hpp"

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  if (path == "-") {
    return json::parse(std::cin);
  }
  std::ifstream in(path);
  if (!in) {
    throw twocopy::ArgumentError("cannot open '" + path + "'");
  }
  return json::parse(in);
}

int emit_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump()
            << "\n";
  return 1;
}

int cmd_run(const std::string& config_path, std::optional<std::string> task,
            std::optional<std::int64_t> shots, bool exact,
            std::optional<std::uint64_t> seed) {
  json config = load_json(config_path);
  if (task) {
    config["task"] = *task;
  }
  if (exact) {
    config["shots"] = "exact";
  } else if (shots) {
    config["shots"] = *shots;
  }
  if (seed) {
    config["seed"] = *seed;
  }
  std::cout << twocopy::run_experiment(config).dump(2) << "\n";
  return 0;
}

int cmd_certify(const std::string& choi_path) {
  const twocopy::ChoiMatrix choi =
      twocopy::choi_from_json(load_json(choi_path));
  const twocopy::PositivityReport report = twocopy::positivity_class(choi);
  std::cout << json{{"classification", twocopy::to_string(report.cls)},
                    {"min_eig_cp", report.min_eig_cp},
                    {"min_eig_ccp", report.min_eig_ccp}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_sample(const std::string& state_path, std::uint64_t shots,
               std::uint64_t seed, const std::string& out_path) {
  const json doc = load_json(state_path);
  const twocopy::DensityMatrix rho = doc.contains("source")
                                         ? twocopy::resolve_state(doc)
                                         : twocopy::density_from_json(doc);
  const auto dist = twocopy::exact_distribution(
      rho, rho, twocopy::DistributionMethod::kClosedForm);
  const auto samples = twocopy::sample_outcomes(dist, shots, seed);
  std::ofstream out(out_path);
  if (!out) {
    throw twocopy::ArgumentError("cannot open output '" + out_path + "'");
  }
  twocopy::write_outcomes_csv(out, samples);
  std::cout << json{{"n", samples.n},
                    {"shots", samples.shots()},
                    {"seed", seed},
                    {"out", out_path}}
                   .dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-copy Bell-measurement simulator and estimation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> task_override;
  std::optional<std::int64_t> shots_override;
  std::optional<std::uint64_t> seed_override;
  bool exact_override = false;
  auto* run = app.add_subcommand("run", "Run an experiment config (JSON)");
  run->add_option("config", config_path, "config path or - for stdin")
      ->required();
  run->add_option("--task", task_override, "override the config's task");
  run->add_option("--shots", shots_override, "override the shot count");
  run->add_flag("--exact", exact_override, "force the exact distribution");
  run->add_option("--seed", seed_override, "override the sampler seed");

  std::string choi_path;
  auto* certify =
      app.add_subcommand("certify-map", "Classify a Choi matrix (CP/ccP)");
  certify->add_option("choi", choi_path, "Choi JSON path")->required();

  std::string state_path;
  std::string out_path;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand(
      "sample", "Sample joint Bell outcomes from two copies of a state");
  sample->add_option("state", state_path, "state JSON (raw or source spec)")
      ->required();
  sample->add_option("--shots", shots, "number of shots")->required();
  sample->add_option("--seed", seed, "sampler seed")->required();
  sample->add_option("--out", out_path, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, task_override, shots_override,
                     exact_override, seed_override);
    }
    if (certify->parsed()) {
      return cmd_certify(choi_path);
    }
    return cmd_sample(state_path, shots, seed, out_path);
  } catch (const twocopy::Error& e) {
    return emit_error(e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return emit_error("argument", e.what());
  } catch (const std::exception& e) {
    return emit_error("internal", e.what());
  }
}
