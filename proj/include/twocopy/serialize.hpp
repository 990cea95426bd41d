#pragma once

#include <iosfwd>

#include <json.hpp>

#include "twocopy/bellmeas.hpp"
#include "twocopy/channels.hpp"
#include "twocopy/detector.hpp"
#include "twocopy/estimators.hpp"
#include "twocopy/states.hpp"

namespace twocopy {

// States and Choi matrices share the {n, matrix: row-major [re, im] pairs}
// schema; coefficient vectors and distributions are flat arrays in the
// module's canonical label order.

nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChoiMatrix& choi);
ChoiMatrix choi_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PauliCoefficients& coeffs);
PauliCoefficients coefficients_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BellDistribution& dist);
BellDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Estimate& estimate);

// Canonical estimator report: {estimator, params, value, std_error, shots,
// flags[]}.
nlohmann::json estimate_report(const std::string& estimator,
                               nlohmann::json params,
                               const Estimate& estimate);

nlohmann::json to_json(const ShotPlan& plan);

nlohmann::json to_json(const EfficiencyReport& report);

// One row per shot, columns a1..an then b1..bn as 0/1, with a header row.
void write_outcomes_csv(std::ostream& out, const SampleSet& samples);

}  // namespace twocopy
