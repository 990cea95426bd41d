#include "twocopy/experiment.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include "twocopy/bellmeas.hpp"
#include "twocopy/channels.hpp"
#include "twocopy/detector.hpp"
#include "twocopy/errors.hpp"
#include "twocopy/serialize.hpp"

namespace twocopy {

namespace {

using nlohmann::json;

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw ArgumentError(std::string("missing or non-string field '") + field +
                        "'");
  }
  return j[field].get<std::string>();
}

int require_int(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw ArgumentError(std::string("missing or non-integer field '") + field +
                        "'");
  }
  return j[field].get<int>();
}

std::uint32_t parse_mask(const std::string& text, int n) {
  if (static_cast<int>(text.size()) != n) {
    throw ArgumentError("mask '" + text + "' must have exactly " +
                        std::to_string(n) + " bits");
  }
  std::uint32_t mask = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ArgumentError("mask '" + text + "' must be a binary string");
    }
    mask = (mask << 1) | static_cast<std::uint32_t>(ch - '0');
  }
  return mask;
}

std::string mask_to_string(std::uint32_t mask, int n) {
  std::string out(n, '0');
  for (int k = 0; k < n; ++k) {
    if ((mask >> (n - 1 - k)) & 1u) {
      out[k] = '1';
    }
  }
  return out;
}

// Either the exact distribution or a sampled outcome set, depending on the
// config's "shots" field.
struct Source {
  BellDistribution dist;
  std::optional<SampleSet> samples;

  Estimate csq(const PauliLabel& label) const {
    return samples ? estimate_csq(*samples, label) : estimate_csq(dist, label);
  }
  Estimate purity_of(std::uint32_t mask) const {
    return samples ? purity(*samples, mask) : purity(dist, mask);
  }
  Estimate pall_of(int m, int n_bit, std::uint32_t mask) const {
    return samples ? p_all(*samples, m, n_bit, mask)
                   : p_all(dist, m, n_bit, mask);
  }
  Estimate concurrence() const {
    return samples ? concurrence_pure(*samples) : concurrence_pure(dist);
  }
};

struct ResolvedRun {
  json config;  // with defaults filled in
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::optional<ShotPlan> plan;
};

ResolvedRun resolve_run(const json& config, bool needs_state) {
  ResolvedRun run;
  run.config = config;
  if (needs_state && !config.contains("state")) {
    throw ArgumentError("config needs a 'state' source");
  }
  if (config.contains("plan")) {
    const json& p = config["plan"];
    run.plan = plan_shots(p.at("delta").get<double>(),
                          p.at("epsilon").get<double>(),
                          p.at("p_conf").get<double>());
    run.config["plan"] = to_json(*run.plan);
  }
  if (!config.contains("shots")) {
    run.config["shots"] = "exact";
  } else if (config["shots"].is_string()) {
    if (config["shots"].get<std::string>() != "exact") {
      throw ArgumentError("shots must be a count or \"exact\"");
    }
  } else if (config["shots"].is_number_unsigned() ||
             (config["shots"].is_number_integer() &&
              config["shots"].get<std::int64_t>() >= 0)) {
    run.shots = config["shots"].get<std::uint64_t>();
  } else {
    throw ArgumentError("shots must be a count or \"exact\"");
  }
  if (run.shots) {
    if (!config.contains("seed")) {
      throw ArgumentError("sampled runs need an explicit seed");
    }
    run.seed = config["seed"].get<std::uint64_t>();
  }
  return run;
}

Source make_source(const ResolvedRun& run, const DensityMatrix& rho,
                   const DensityMatrix& rho_b) {
  Source source{
      exact_distribution(rho, rho_b, DistributionMethod::kClosedForm), {}};
  if (run.shots) {
    source.samples = sample_outcomes(source.dist, *run.shots, run.seed);
  }
  return source;
}

json run_distribution(const ResolvedRun& run, const DensityMatrix& rho,
                      const DensityMatrix& rho_b, const json& params) {
  const std::string method =
      params.contains("method") ? params["method"].get<std::string>() : "both";
  json results;
  if (method == "direct") {
    results["distribution"] =
        to_json(exact_distribution(rho, rho_b, DistributionMethod::kDirect));
  } else if (method == "closed-form") {
    results["distribution"] = to_json(
        exact_distribution(rho, rho_b, DistributionMethod::kClosedForm));
  } else if (method == "both") {
    const auto direct =
        exact_distribution(rho, rho_b, DistributionMethod::kDirect);
    const auto closed =
        exact_distribution(rho, rho_b, DistributionMethod::kClosedForm);
    results["distribution"] = to_json(closed);
    results["method_deviation"] =
        (direct.probabilities() - closed.probabilities())
            .cwiseAbs()
            .maxCoeff();
  } else {
    throw ArgumentError("unknown distribution method '" + method + "'");
  }
  results["method"] = method;
  if (run.shots) {
    const auto dist =
        exact_distribution(rho, rho_b, DistributionMethod::kClosedForm);
    const auto samples = sample_outcomes(dist, *run.shots, run.seed);
    Eigen::VectorXd freq = Eigen::VectorXd::Zero(dist.probabilities().size());
    for (const auto& outcome : samples.outcomes) {
      freq((static_cast<std::size_t>(outcome.a) << samples.n) | outcome.b) +=
          1.0;
    }
    freq /= static_cast<double>(samples.outcomes.size());
    results["empirical"] =
        std::vector<double>(freq.data(), freq.data() + freq.size());
  }
  return results;
}

json run_tomography(const ResolvedRun& run, const DensityMatrix& rho,
                    const json& params) {
  const int n = rho.qubits();
  std::vector<PauliLabel> labels;
  if (!params.contains("labels") ||
      (params["labels"].is_string() &&
       params["labels"].get<std::string>() == "all")) {
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n)); ++idx) {
      labels.push_back(PauliLabel::from_flat(n, idx));
    }
  } else if (params["labels"].is_array()) {
    for (const auto& text : params["labels"]) {
      labels.push_back(PauliLabel::parse(text.get<std::string>()));
    }
  } else {
    throw ArgumentError("params.labels must be \"all\" or an array");
  }
  const Source source = make_source(run, rho, rho);
  json rows = json::array();
  for (const auto& label : labels) {
    if (label.n != n) {
      throw ArgumentError("label " + label.str() +
                          " does not match the state's qubit count");
    }
    Estimate est = source.csq(label);
    bool clamped = false;
    const double abs_c = abs_c_from_csq(est, &clamped);
    if (clamped) {
      est.flags.push_back("clamped");
    }
    json row = estimate_report("csq", {{"label", label.str()}}, est);
    row["abs_c"] = abs_c;
    if (run.plan && est.std_error > 0.0 && abs_c > 0.0) {
      row["abs_c_halfwidth"] = abs_c_halfwidth(*run.plan, est.std_error, abs_c);
    }
    rows.push_back(std::move(row));
  }
  json results = {{"labels", std::move(rows)}};
  if (run.plan) {
    results["plan"] = to_json(*run.plan);
  }
  return results;
}

json run_purity(const ResolvedRun& run, const DensityMatrix& rho,
                const json& params, bool mask_required) {
  const int n = rho.qubits();
  std::uint32_t mask = (1u << n) - 1u;
  if (params.contains("mask")) {
    mask = parse_mask(params["mask"].get<std::string>(), n);
  } else if (mask_required) {
    throw ArgumentError("partial-purity needs params.mask");
  }
  const Source source = make_source(run, rho, rho);
  return {{"purity",
           estimate_report("purity", {{"mask", mask_to_string(mask, n)}},
                           source.purity_of(mask))}};
}

json run_pall(const ResolvedRun& run, const DensityMatrix& rho,
              const json& params) {
  const int n = rho.qubits();
  const int m = require_int(params, "m");
  const int n_bit = require_int(params, "n");
  if ((m & ~1) != 0 || (n_bit & ~1) != 0) {
    throw ArgumentError("params.m and params.n must be bits");
  }
  std::uint32_t mask = (1u << n) - 1u;
  if (params.contains("mask")) {
    mask = parse_mask(params["mask"].get<std::string>(), n);
  }
  const Source source = make_source(run, rho, rho);
  return {{"p_all",
           estimate_report("p_all",
                           {{"m", m},
                            {"n", n_bit},
                            {"mask", mask_to_string(mask, n)}},
                           source.pall_of(m, n_bit, mask))}};
}

json run_concurrence(const ResolvedRun& run, const DensityMatrix& rho) {
  const int n = rho.qubits();
  const std::uint32_t full = (1u << n) - 1u;
  const Source source = make_source(run, rho, rho);
  const Estimate est = source.concurrence();
  json results = {
      {"concurrence", estimate_report("concurrence_pure", {}, est)},
      {"p_all_11",
       estimate_report(
           "p_all",
           {{"m", 1}, {"n", 1}, {"mask", mask_to_string(full, n)}},
           source.pall_of(1, 1, full))}};
  if (rho.qubits() >= 2 && rho.purity() >= 1.0 - 1e-8) {
    results["direct"] = concurrence_direct(rho);
  } else {
    results["flags"] = {"no-direct-oracle: state not pure or n < 2"};
  }
  return results;
}

json run_ccpmvm_check(const json& params) {
  const int n = require_int(params, "n");
  const json& povm_spec = params.at("povm");
  const std::string type = require_string(povm_spec, "type");
  std::vector<Eigen::MatrixXcd> povm;
  std::vector<std::string> labels;
  if (type == "bell") {
    povm = bell_povm(n);
    for (std::size_t idx = 0; idx < povm.size(); ++idx) {
      const auto outcome = BellDistribution::outcome_from_flat(n, idx);
      labels.push_back("a=" + mask_to_string(outcome.a, n) +
                       ",b=" + mask_to_string(outcome.b, n));
    }
  } else if (type == "random") {
    povm = random_povm(n, require_int(povm_spec, "elements"),
                       povm_spec.at("seed").get<std::uint64_t>());
  } else if (type == "file") {
    std::ifstream in(require_string(povm_spec, "path"));
    if (!in) {
      throw ArgumentError("cannot open POVM file");
    }
    json doc = json::parse(in);
    for (const auto& element : doc.at("elements")) {
      povm.push_back(choi_from_json({{"n", n}, {"matrix", element}}).matrix());
    }
  } else {
    throw ArgumentError("unknown POVM type '" + type + "'");
  }

  const CcpmvmFamily family = povm_to_ccpmvm(n, povm, labels);
  const auto N2 = static_cast<Eigen::Index>(family.members()[0].choi.dim());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(N2, N2);
  json members = json::array();
  for (const auto& member : family.members()) {
    const PositivityReport report = positivity_class(member.choi);
    sum += member.choi.matrix();
    members.push_back({{"outcome", member.outcome},
                       {"class", to_string(report.cls)},
                       {"min_eig_cp", report.min_eig_cp},
                       {"min_eig_ccp", report.min_eig_ccp}});
  }
  json results = {
      {"members", std::move(members)},
      {"sum_deviation",
       (sum - Eigen::MatrixXcd::Identity(N2, N2)).cwiseAbs().maxCoeff()}};
  if (type == "bell") {
    // Every Bell outcome's map has the closed form T(b,a) rho^T T(b,a) / N.
    double worst = 0.0;
    for (std::size_t idx = 0; idx < family.members().size(); ++idx) {
      const auto outcome = BellDistribution::outcome_from_flat(n, idx);
      const Eigen::MatrixXcd t =
          pauli_matrix(PauliLabel(n, outcome.b, outcome.a));
      const double scale = static_cast<double>(std::size_t{1} << n);
      const ChoiMatrix closed =
          choi_from_map(n, [&](const Eigen::MatrixXcd& x) {
            return Eigen::MatrixXcd(t * x.transpose() * t / scale);
          });
      worst = std::max(
          worst, (family.members()[idx].choi.matrix() - closed.matrix())
                     .cwiseAbs()
                     .maxCoeff());
    }
    results["bell_closed_form_deviation"] = worst;
  }
  return results;
}

json run_detector_compare(const ResolvedRun& run, const json& config,
                          const json& params) {
  if (!run.plan) {
    throw ArgumentError("detector-compare needs a plan");
  }
  const AncillaSpec ancilla =
      AncillaSpec::from_state(resolve_state(params.at("ancilla")));
  json results = {{"efficiency", to_json(efficiency_report(ancilla, *run.plan))},
                  {"min_abs_c0", ancilla.min_abs_c0},
                  {"coefficient_bound",
                   unbiased_coefficient_bound(ancilla.rho0.qubits(),
                                              ancilla.rho0.purity())}};
  if (config.contains("state")) {
    const DensityMatrix rho = resolve_state(config["state"]);
    if (rho.qubits() != ancilla.rho0.qubits()) {
      throw ArgumentError("state and ancilla qubit counts differ");
    }
    const Source source = make_source(run, rho, ancilla.rho0);
    const PauliCoefficients exact = pauli_decompose(rho);
    json rows = json::array();
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(exact.c.size());
         ++idx) {
      const PauliLabel label = PauliLabel::from_flat(rho.qubits(), idx);
      if (std::abs(ancilla.c0.at(label)) <= kRecoverableThreshold) {
        continue;
      }
      const Estimate est =
          source.samples
              ? estimate_c_ancilla(*source.samples, ancilla, label)
              : estimate_c_ancilla(source.dist, ancilla, label);
      json row =
          estimate_report("c_ancilla", {{"label", label.str()}}, est);
      row["c_exact"] = exact.at(label);
      rows.push_back(std::move(row));
    }
    results["recovered"] = std::move(rows);
  }
  return results;
}

}  // namespace

DensityMatrix resolve_state(const nlohmann::json& source) {
  const std::string kind = require_string(source, "source");
  if (kind == "random") {
    return random_state(require_int(source, "n"), require_int(source, "rank"),
                        source.at("seed").get<std::uint64_t>());
  }
  if (kind == "bloch") {
    const auto p = source.at("p").get<std::vector<double>>();
    if (p.size() != 3) {
      throw ArgumentError("bloch source needs p = [x, y, z]");
    }
    return qubit_from_bloch(BlochVector{p[0], p[1], p[2]});
  }
  if (kind == "named") {
    const std::string name = require_string(source, "name");
    if (name == "bell") {
      return bell_pair_state();
    }
    const int n = require_int(source, "n");
    if (name == "ghz") {
      return ghz_state(n);
    }
    if (name == "product-zero") {
      return product_zero_state(n);
    }
    throw ArgumentError("unknown named state '" + name + "'");
  }
  if (kind == "file") {
    std::ifstream in(require_string(source, "path"));
    if (!in) {
      throw ArgumentError("cannot open state file '" +
                          source["path"].get<std::string>() + "'");
    }
    return density_from_json(nlohmann::json::parse(in));
  }
  if (kind == "unbiased") {
    return unbiased_ancilla(require_int(source, "n"));
  }
  throw ArgumentError("unknown state source '" + kind + "'");
}

nlohmann::json run_experiment(const nlohmann::json& config) {
  const auto start = std::chrono::steady_clock::now();
  if (!config.is_object()) {
    throw ArgumentError("config must be a JSON object");
  }
  const std::string task = require_string(config, "task");
  const json params =
      config.contains("params") ? config["params"] : json::object();

  const bool needs_state = task != "ccpmvm-check" && task != "detector-compare";
  ResolvedRun run = resolve_run(config, needs_state);

  json results;
  if (task == "distribution") {
    const DensityMatrix rho = resolve_state(config.at("state"));
    const DensityMatrix rho_b = params.contains("state_b")
                                    ? resolve_state(params["state_b"])
                                    : rho;
    results = run_distribution(run, rho, rho_b, params);
  } else if (task == "tomography") {
    results = run_tomography(run, resolve_state(config.at("state")), params);
  } else if (task == "purity") {
    results = run_purity(run, resolve_state(config.at("state")), params,
                         /*mask_required=*/false);
  } else if (task == "partial-purity") {
    results = run_purity(run, resolve_state(config.at("state")), params,
                         /*mask_required=*/true);
  } else if (task == "pall") {
    results = run_pall(run, resolve_state(config.at("state")), params);
  } else if (task == "concurrence") {
    results = run_concurrence(run, resolve_state(config.at("state")));
  } else if (task == "ccpmvm-check") {
    results = run_ccpmvm_check(params);
  } else if (task == "detector-compare") {
    results = run_detector_compare(run, config, params);
  } else {
    throw ArgumentError("unknown task '" + task + "'");
  }

  json body = {{"schema_version", "1"},
               {"config", run.config},
               {"results", std::move(results)}};
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return {{"body", std::move(body)},
          {"duration_ms", static_cast<std::int64_t>(elapsed.count())}};
}

}  // namespace twocopy
